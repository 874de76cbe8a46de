"""Exact conditional-independence toolkit for discrete random vectors.

The library has five layers:

* :mod:`cinfer.setfn` — set-function calculus: difference expressions, the
  Ingleton expression and its five four-term rewritings, polymatroid /
  matroid / tightness predicates.
* :mod:`cinfer.dist` — exact rational distributions: marginals, CI tests,
  conditional and lattice products, entropies, divergences, and the
  double-Markov intersection variable.
* :mod:`cinfer.inference` — the 27-rule inference engine over elementary
  triplets, closure, meet-closure, permutation orbits, and full
  enumeration of the 26,424 semi-graphoids and 18,478 CI structures over
  four variables.
* :mod:`cinfer.inequalities` — the five conditional Ingleton inequalities,
  their counterexample certificates, and the symbolic derivation checker.
* :mod:`cinfer.catalog` — the bundled reference distributions and rank
  functions, with claim verification and the 92 irreducible structures.
"""

from .sets import BasicSet, default_base
from .setfn import (
    CheckWitness,
    SetFunction,
    cardinality_function,
    delta,
    induced_ci_structure_of_rank,
    ingleton,
    is_matroid,
    is_polymatroid,
    is_tight,
    mask_form,
    tighten,
    upper_indicator,
)
from .structures import CIStructure, ElementaryTriplet, expand_to_elementary
from .dist import (
    ConsonanceError,
    DominanceError,
    JointDistribution,
    SampleSpace,
    conditional_product,
    double_markov_extend,
    entropy_function,
    induced_ci_structure,
    is_ci,
    kl_divergence,
    lattice_product,
    marginal,
)
from .inference import (
    GroundRule,
    InferenceRule,
    RULES,
    closure,
    enumerate_ci_structures,
    enumerate_semigraphoids,
    ground_rules,
    is_closed,
    meet,
    meet_closure,
    orbit,
)
from .inequalities import (
    CONDITIONAL_INGLETON_RULES,
    check_conditional_ingleton,
    check_sixth_failure,
    load_derivation_schemas,
    verify_counterexample,
    verify_derivation,
)
from . import catalog, checks

__version__ = "0.1.0"

__all__ = [
    "BasicSet",
    "CIStructure",
    "CheckWitness",
    "ConsonanceError",
    "CONDITIONAL_INGLETON_RULES",
    "DominanceError",
    "ElementaryTriplet",
    "GroundRule",
    "InferenceRule",
    "JointDistribution",
    "RULES",
    "SampleSpace",
    "SetFunction",
    "cardinality_function",
    "catalog",
    "check_conditional_ingleton",
    "check_sixth_failure",
    "checks",
    "closure",
    "conditional_product",
    "default_base",
    "delta",
    "double_markov_extend",
    "entropy_function",
    "enumerate_ci_structures",
    "enumerate_semigraphoids",
    "expand_to_elementary",
    "ground_rules",
    "induced_ci_structure",
    "induced_ci_structure_of_rank",
    "ingleton",
    "is_ci",
    "is_closed",
    "is_matroid",
    "is_polymatroid",
    "is_tight",
    "kl_divergence",
    "lattice_product",
    "load_derivation_schemas",
    "marginal",
    "mask_form",
    "meet",
    "meet_closure",
    "orbit",
    "tighten",
    "upper_indicator",
]
