"""Combinatorial machinery for triangulated spheres, balls and manifolds:
bistellar/shelling move engines, f/h/g-vector identities, exact-field
homology, sigma/mu-vectors and the combinatorial tightness criterion."""

from .core import (Complex, ComplexError, DualGraph, InputError,
                   NotAFaceError, RangeError, StructureError, antistar,
                   are_isomorphic, boundary, connected_sum, dual_graph,
                   facet_hash, induced, is_closed_pseudomanifold,
                   is_pseudomanifold, is_weak_pseudomanifold, join, link,
                   load_facets, neighbourliness, save_facets, skeleton, star)
from .vectors import (VectorProfile, check_dehn_sommerville, check_klee,
                      euler_identity_check, f_from_g, f_vector, g_vector,
                      h_vector, link_g_identity, w_k_gvector_relations)
from .homology import (GF2, QQ, BettiTable, FieldSpec, betti,
                       inclusion_injective, orientable, relative_betti,
                       relative_betti_pair)
from .moves import (BistellarMove, HypothesisViolation, MoveCertificate,
                    MoveError, SearchOutcome, ShellingMove, apply_bistellar,
                    apply_reverse, canonical_ball, canonical_manifold, ears,
                    enumerate_bistellar, find_shelling, is_1_stacked_via_tree,
                    is_k_stacked_ball, replay_bistellar, replay_shelling,
                    stellation_search, verify_shelling, w_k_membership)
from .tightness import (BudgetError, MuReport, criterion_battery, is_tight,
                        morse_report, mu_vector, mu_via_pairs, sigma_g_report,
                        sigma_vector)
from .constructions import (CorpusEntry, cone_over_antistar, corpus,
                            corpus_complex, cross_polytope, cyclic_complex,
                            klee_novik, standard_ball, standard_sphere)

__version__ = "1.0.0"
