from .pinhole import Pinhole
from .pinhole import MotifSpec
from .pinhole import Motif
from .motifs import fermat_motif
from .motifs import log_spiral_motif
from .motifs import archimedean_motif
from .motifs import explicit_motif
from .motifs import build_motif
from .mask import PinholeMask
from .mask import replicate
from .mask import compound_mask
from .mask import mirror_mask
from .mask import rotate_mask
from .mask import find_overlaps
from .raster import rasterize
from .recipe import MaskRecipe
from .io import write_mask_csv
from .io import read_mask_csv
