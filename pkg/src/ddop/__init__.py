"""Delay-Doppler plane orthogonal pulses, ambiguity checks and ODDM frames."""

from .ambiguity import AmbiguityGrid, ambiguity_grid, cross_ambiguity, inner_product, shifted_inner_product
from .channel import DdChannel, Path, apply, random_channel
from .modem import (
    Frame,
    mc_demodulate,
    mc_synthesize,
    oddm_demodulate,
    oddm_modulate,
    qam_demap,
    qam_map,
    random_qpsk_frame,
)
from .pulses import (
    DdopParams,
    ExtensionWarning,
    make_ddop,
    make_ddop_extended,
    make_periodic,
    make_rect,
    make_rrc,
    periodicity_window,
    sub_pulse,
)
from .signals import GridError, SampledSignal, tf_shift
from .spectral import Spectrum, ddop_spectrum_closed_form, essential_bandwidth, rrc_spectrum, transform
from .validators import (
    OrthogonalityReport,
    PeriodicityResult,
    check_freq_orthogonality,
    check_local_biorthogonality,
    check_local_orthogonality,
    check_periodicity,
    check_srn,
)

__version__ = "0.1.0"
