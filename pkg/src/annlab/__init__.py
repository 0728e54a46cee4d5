"""annlab: desk-scale verification of ANN sketch memory lower bounds,
random-access-code information audits, and candidate-scanning search."""

from .capacity import (DecisionFamily, capacity_bound, hard_decision_family,
                       near_predicate, shattering_check)
from .grover import (CandidateInstance, GroverRun, bbbv_hybrid,
                     distinguishability_check, grover_statevector,
                     optimal_iterations, rotation_success, scaling_experiment)
from .hamming import (BitVector, Dataset, enumerate_valid_answers,
                      hamming_distance, is_valid_cann_answer,
                      nearest_neighbor_bruteforce)
from .instances import (Code, HardInstance, build_instance, decode_bit,
                        forced_answer, forced_point, generate_code,
                        verify_forcing, verify_forcing_all)
from .qrac import (ExhaustiveClassicalSketch, NayakCertificate,
                   NoisyClassicalSketch, QracScheme, SketchSimulator,
                   basis_encoding_qrac, certify_nayak, evaluate_qrac,
                   information_audit, nayak_bound, qrac_2to1, qrac_3to1,
                   sketch_to_qrac)
from .states import (CqEnsemble, Povm, QuantumState, binary_entropy,
                     conditional_information_chain, holevo_mutual_information,
                     measure, von_neumann_entropy)

__version__ = "0.1.0"
