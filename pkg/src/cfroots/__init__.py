"""Characteristic functions with prescribed support and their root families.

Build a characteristic function whose essential support is any admissible
symmetric union of 2k+1 open intervals, enumerate the n**k distinct
characteristic functions sharing its n-th power, verify the whole family
numerically (Bochner positivity, Hermitian symmetry, support, power
identity), and treat each member as a genuine probability law with density
evaluation and reproducible sampling.
"""

from .analyze import (
    CfGrid,
    ExploreResult,
    PhaseProfile,
    check_hermitian,
    check_positive_definite,
    check_power_identity,
    check_support,
    classic_atoms,
    classic_pair,
    cn_upper_bound,
    explore_cn,
    phase_profile,
    sample_cf,
    sample_member,
    symmetric_abscissas,
    verify_family,
    verify_member,
)
from .construct import (
    Blueprint,
    ComponentKnots,
    KnotPlan,
    blueprint_from_dict,
    blueprint_from_json,
    build_blueprint,
    make_blueprint,
    place_knots,
)
from .distribution import DensityView, MassReport, SampleBatch, empirical_cf
from .family import (
    FamilyManifest,
    PhaseVector,
    build_manifest,
    equivalent,
    family_size,
    identify,
    phase_vectors,
    probe_points,
    sample_member_probes,
    zero_phase,
)
from .kernel import Kernel, TriangleKernel, make_kernel, make_triangle, verify_kernel
from .reports import CheckReport, VerificationReport
from .support import Interval, SupportSpec, spec_from_json, spec_to_json, validate

__version__ = "0.1.0"

__all__ = [
    "Blueprint",
    "CfGrid",
    "CheckReport",
    "ComponentKnots",
    "DensityView",
    "ExploreResult",
    "FamilyManifest",
    "Interval",
    "Kernel",
    "KnotPlan",
    "MassReport",
    "PhaseProfile",
    "PhaseVector",
    "SampleBatch",
    "SupportSpec",
    "TriangleKernel",
    "VerificationReport",
    "blueprint_from_dict",
    "blueprint_from_json",
    "build_blueprint",
    "build_manifest",
    "check_hermitian",
    "check_positive_definite",
    "check_power_identity",
    "check_support",
    "classic_atoms",
    "classic_pair",
    "cn_upper_bound",
    "empirical_cf",
    "equivalent",
    "explore_cn",
    "family_size",
    "identify",
    "make_blueprint",
    "make_kernel",
    "make_triangle",
    "phase_profile",
    "phase_vectors",
    "place_knots",
    "probe_points",
    "sample_cf",
    "sample_member",
    "sample_member_probes",
    "spec_from_json",
    "spec_to_json",
    "symmetric_abscissas",
    "validate",
    "verify_family",
    "verify_kernel",
    "verify_member",
    "zero_phase",
]
