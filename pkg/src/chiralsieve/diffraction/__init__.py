from .setup import FreeSpace
from .setup import Lens
from .setup import Astigmatism
from .setup import OpticalSetup
from .setup import EffectiveGeometry
from .setup import effective_geometry
from .sieve import jinc
from .sieve import propagate_sieve
from .oracle import propagate_oracle
from .astigmatism import astigmatic_propagate
from .astigmatism import astigmatic_transform
from .astigmatism import count_dark_stripes
from .astigmatism import stripe_normal
from .zstack import ZStack
from .zstack import z_stack
from .zstack import write_z_stack
