"""Computability models over finite categories, built and checked by exhaustive search."""
__version__ = "0.1.0"

from .errors import (CatCompError, CompositionTypeError, InvalidInputError, MissingPullbackError,
                     ModelAxiomError, MonoPreservationError, PreconditionError, SizeLimitError,
                     TotalityError, UnknownNameError)
from .setcore import FinSet, PartialFn, TotalFn, compose_partial_fn, pullback_sets
from .fincat import (CatPullback, Cospan, FinCategory, find_pullback, has_all_pullbacks, is_mono,
                     opposite, validate_category)
from .functors import (CatSetArrow, NatTrans, SetFunctor, hom_functor, preserves_pullbacks,
                       validate_functor, validate_nat_trans, validate_slice_arrow)
from .models import (Model, PartialMorphism, build_partial_model, build_total_model,
                     check_model_axioms, compose_partial_morphisms, image_of_partial_morphism)
from .simulations import (Simulation, check_model_equivalence, check_simulation,
                          compose_simulations, identity_simulation, is_transformable,
                          simulation_from_nat_trans, simulation_from_slice_arrow, tracks)
from .assemblies import (AsmFragment, Assembly, check_assembly, check_gamma_delta_equiv, delta_t,
                         embed_Ft, gamma_t, model_over_fragment, tracked_morphisms)
from .bases import Base, build_base_model, builtin_base, check_base, check_cobase
from .serialize import Workspace

__all__ = [
    "CatCompError", "CompositionTypeError", "InvalidInputError", "MissingPullbackError",
    "ModelAxiomError", "MonoPreservationError", "PreconditionError", "SizeLimitError",
    "TotalityError", "UnknownNameError", "FinSet", "PartialFn", "TotalFn", "compose_partial_fn",
    "pullback_sets", "CatPullback", "Cospan", "FinCategory", "find_pullback", "has_all_pullbacks",
    "is_mono", "opposite", "validate_category", "CatSetArrow", "NatTrans", "SetFunctor",
    "hom_functor", "preserves_pullbacks", "validate_functor", "validate_nat_trans",
    "validate_slice_arrow", "Model", "PartialMorphism", "build_partial_model", "build_total_model",
    "check_model_axioms", "compose_partial_morphisms", "image_of_partial_morphism", "Simulation",
    "check_model_equivalence", "check_simulation", "compose_simulations", "identity_simulation",
    "is_transformable", "simulation_from_nat_trans", "simulation_from_slice_arrow", "tracks",
    "AsmFragment", "Assembly", "check_assembly", "check_gamma_delta_equiv", "delta_t", "embed_Ft",
    "gamma_t", "model_over_fragment", "tracked_morphisms", "Base", "build_base_model",
    "builtin_base", "check_base", "check_cobase", "Workspace",
]
