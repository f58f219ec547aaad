"""Pre-Schwarzian and Schwarzian derivatives on the unit disk: Ozaki
close-to-convex members, class G(beta), harmonic mappings, norm estimates
and numerical audits of the associated sharp bounds."""

from .bounds import (
    EnvelopeRow,
    GammaParam,
    GBetaParams,
    MtAudit,
    OzakiParams,
    distortion_envelope,
    f0_residuals,
    g_residual,
    growth_envelope,
    lemma_a_residual,
    mt_audit,
    radial_integrate,
    theorem_constants,
)
from .derivatives import (
    big_phi,
    derivative_field,
    harmonic_pre_schwarzian,
    harmonic_schwarzian,
    jacobian,
    phi_from_f,
    pre_schwarzian,
    schwarzian,
)
from .errors import *  # noqa: F401,F403
from .factory import (
    BlaschkeDescriptor,
    FunctionHandle,
    HarmonicHandle,
    blaschke_eval,
    extremal_ozaki,
    gbeta_member,
    make_harmonic,
    mobius_compose,
    named_function,
    ozaki_member,
    random_blaschke,
    random_ozaki_member,
)
from .norms import GridSpec, NormEstimate, becker_functional, norm_of, weighted_sup
from .series import (
    PowerSeries,
    ps_derive,
    ps_div,
    ps_eval,
    ps_exp,
    ps_integrate,
    ps_linear,
    ps_mul,
)

__version__ = "0.1.0"
