from .grid import GridSpec
from .field import ComplexField
from .field import field_power
from .field import radial_profile
from .field import ring_radii
from .rotation import interpolate
from .rotation import rotate_field
from .rotation import superpose_rotations
from .rotation import sample_circle
from .vortex import Winding
from .vortex import measure_winding
from .vortex import phase_winding
from .vortex import angular_peak_count
