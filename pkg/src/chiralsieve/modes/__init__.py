from .basis import LGBasisSpec
from .basis import lg_eval
from .basis import lg_field
from .basis import gram_matrix
from .decompose import CoeffTable
from .decompose import decompose
from .decompose import synthesize
from .spectrum import OAMSpectrum
from .spectrum import oam_spectrum
from .spectrum import dominant_fraction
from .selection import selection_factor
from .selection import selection_sum
from .selection import symmetric_filter_coeffs
from .io import write_spectrum_csv
from .io import write_coeffs_csv
