"""Bettisect package."""
from ._helpers import EngineConfig
from ._helpers import Families
from ._helpers import FieldSpec
from ._helpers import Suites
from .betti_lib import betti_helper as betti
from .betti_lib import invariants_helper as invariants
from .closure_lib import closure_helper as closure
from .formulas_lib import predict_helper as predict
from .graph_lib import load_ideal
from .polarize_lib import polarize_helper as polarize
from .verify_lib import verify_helper as verify

__all__ = [
    "betti",
    "closure",
    "EngineConfig",
    "Families",
    "FieldSpec",
    "invariants",
    "load_ideal",
    "polarize",
    "predict",
    "Suites",
    "verify",
]
