"""Strong Rayleigh decisions and exact sum-of-squares certificates for
block-symmetric matroid families."""
from .errors import NoCertificateError, NotSymmetricError, SizeLimitError, SpecError, UnknownElementError
from .models import (
    LinePlusFreeSpec,
    TwoFlatSpec,
    UniformSpec,
    basis_enumerator_line,
    basis_enumerator_two_flats,
    basis_enumerator_uniform,
    rayleigh_closed_form,
    validate,
)
from .polycore import (
    BoundedExponentForm,
    GroundSet,
    MultiaffinePoly,
    contract,
    delete,
    elementary_symmetric,
    evaluate,
    monomial_symmetric,
    multiply,
    rayleigh_difference,
)
from .soscert import SOSCertificate, build_certificate, uniform_sos, verify_certificate
from .stability import is_real_rooted, is_strongly_rayleigh, negativity_witness, threshold_A

__version__ = "0.1.0"
