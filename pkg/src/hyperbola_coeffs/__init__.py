"""Coefficient problems for function classes subordinate to ``(1 - z)**(-s)``.

Jet arithmetic, extremal functions, coefficient functionals, closed-form
bounds and a seeded numerical search that checks the bounds.
"""

from .bounds import BoundResult, coeff_bound, fs_bound, hankel22_bound, schwarz_fs_bound
from .classes import (
    ClassMember,
    ClassParams,
    HyperbolaPoint,
    Kind,
    boundary_point,
    k_extremal,
    member_from_schwarz,
    phi_extremal,
    point_in_domain,
    q_series,
)
from .functionals import (
    FunctionalValue,
    coefficient,
    fekete_szego,
    hankel,
    inverse_coeffs,
    log_coeffs,
    z_over_f_coeffs,
)
from .search import (
    CampaignConfig,
    CampaignReport,
    SchwarzPrefix,
    blaschke_member,
    prefix_functional,
    rotation_family,
    run_campaign,
)
from .series import TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "coeff_bound",
    "fs_bound",
    "hankel22_bound",
    "schwarz_fs_bound",
    "ClassMember",
    "ClassParams",
    "HyperbolaPoint",
    "Kind",
    "boundary_point",
    "k_extremal",
    "member_from_schwarz",
    "phi_extremal",
    "point_in_domain",
    "q_series",
    "FunctionalValue",
    "coefficient",
    "fekete_szego",
    "hankel",
    "inverse_coeffs",
    "log_coeffs",
    "z_over_f_coeffs",
    "CampaignConfig",
    "CampaignReport",
    "SchwarzPrefix",
    "blaschke_member",
    "prefix_functional",
    "rotation_family",
    "run_campaign",
    "TruncatedSeries",
]
