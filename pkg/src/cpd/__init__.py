"""Complemented p-subgroups (Cp^d) of concrete finite groups."""

from .classifier import (ClassificationReport, CpdVerdict, brute_force_cpd, classify,
                         corollary_c_necessary, theorem_a_classify, theorem_b_classify)
from .errors import (BadInput, BadParameters, CapExceeded, CpdError, HypothesisViolated,
                     NotFaithful, NotInvariant, NotNormal, UnknownName)
from .group import ELEMENT_CAP, LATTICE_CAP, FiniteGroup, SubgroupHandle
from .lattice import (frattini, is_complemented, is_supersolvable, minimal_normal_subgroups,
                      o_pprime, subgroups_up_to_conjugacy)
from .modrep import (SPIN_CAP, HModule, SubmoduleBasis, are_isomorphic, count_irreducible_submodules,
                     decompose, endomorphism_algebra_dim, homogeneous_sum, is_absolutely_irreducible,
                     is_homogeneous, is_irreducible, maschke_complement, semidirect_group,
                     singer_module, spin)
from .numtheory import PrimePower, p_part
from .properties import property_suite
from .pstructure import (hall_pprime_complement, is_elementary_abelian, subgroups_of_order_pd,
                         sylow_p)

__version__ = "0.1.0"

__all__ = [
    "BadInput",
    "BadParameters",
    "CapExceeded",
    "ClassificationReport",
    "CpdError",
    "CpdVerdict",
    "ELEMENT_CAP",
    "FiniteGroup",
    "HModule",
    "HypothesisViolated",
    "LATTICE_CAP",
    "NotFaithful",
    "NotInvariant",
    "NotNormal",
    "PrimePower",
    "SPIN_CAP",
    "SubgroupHandle",
    "SubmoduleBasis",
    "UnknownName",
    "are_isomorphic",
    "brute_force_cpd",
    "classify",
    "corollary_c_necessary",
    "count_irreducible_submodules",
    "decompose",
    "endomorphism_algebra_dim",
    "frattini",
    "hall_pprime_complement",
    "homogeneous_sum",
    "is_absolutely_irreducible",
    "is_complemented",
    "is_elementary_abelian",
    "is_homogeneous",
    "is_irreducible",
    "is_supersolvable",
    "maschke_complement",
    "minimal_normal_subgroups",
    "o_pprime",
    "p_part",
    "property_suite",
    "semidirect_group",
    "singer_module",
    "spin",
    "subgroups_of_order_pd",
    "subgroups_up_to_conjugacy",
    "sylow_p",
    "theorem_a_classify",
    "theorem_b_classify",
]
