"""Finite Heyting and Gödel algebras, their two-valued spectra, intuitionistic
topological systems and the Kripke models they induce."""

from .duality import (
    Isomorphism,
    SpectrumPoset,
    TwoValuedHom,
    dualize_hom,
    is_forest,
    prime_filters,
    roundtrip_algebra,
    roundtrip_poset,
    spectrum,
    upset_algebra,
)
from .formula import parse_formula, pretty
from .kripke import (
    KripkeModel,
    countermodel_search,
    forces,
    model_from_system,
    validates,
)
from .lattice import (
    BoundedDistributiveLattice,
    HeytingAlgebra,
    HomCandidate,
    LatticeSpec,
    build_lattice,
    chain,
    check_hom,
    is_goedel,
    negation,
    residuate,
    two,
)
from .posets import FinitePoset, all_posets, posets_of_size
from .topsys import (
    ITopSystem,
    SystemMorphism,
    build_system,
    canonical_system,
    check_morphism,
    classify_system,
    dual_system_morphism,
    p_star,
    unit_and_triangle,
)

__version__ = "0.1.0"
