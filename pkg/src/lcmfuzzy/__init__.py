"""Distance-measure fuzzy reasoning on discrete vectors of unequal length,
with baseline methods, a reductive-property harness and a control simulator."""

from .baselines import (AarsForm, RelationKind, RelationMatrix, aars_fmp, aars_fmt,
                        build_relation, cri_fmp, cri_fmt, qip_fmp, qip_fmt, relation_fmp,
                        relation_fmt, tip_fmp, tip_fmt)
from .control import (ControlTrace, ControllerConfig, PlantParams, convergence_probe,
                      fuzzify, infer_increment, plant_step, run_closed_loop)
from .lcm import (CaseTag, ExtendedVector, LcmInferenceResult, SignForm, fmp_lcm, fmt_lcm,
                  lcm_distance, lcm_extend, normalize, select_anchors, sign_vector)
from .logic import Implication, TNorm, implication_value, residuated_tnorm, tnorm_value
from .measures import dm_distance, similarity, sm_from_dm
from .methods import InferenceMethod, InferenceRequest, infer
from .rpcf import (ExperimentSpec, RpcfReport, compare_methods, expected_target, rpcf,
                   run_experiment)
from .sets import (DimensionMismatch, FuzzySetVector, Hedge, HedgeKind, InvalidFuzzySet,
                   apply_hedge, complement)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
