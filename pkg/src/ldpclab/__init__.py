"""LDPC construction, multi-representation BP decoding, and link simulation."""

from .alist import read_alist, write_alist
from .bounds import (BoundCurve, biawgn_capacity, capacity_threshold_db,
                     fer_to_ber, gallager_curve, gallager_fer_bound,
                     gv_distance, required_snr)
from .decoder import (DecoderConfig, DecoderOutput, LeakConfig, bp_decode,
                      channel_llr, leak_schedule, leaking_decode)
from .gf2 import (GeneratorForm, RankDeficiencyError, SparseBinaryMatrix,
                  rank, row_space_contains, systematic_generator)
from .mbbp import (DecoderSpec, MbbpConfig, MbbpResult, leaking_bank,
                   mbbp_decode, plain_bank, select_candidate)
from .peg import (DegreeAssignment, DegreeDistribution, construct_peg_code,
                  optimized_distribution, peg_construct, quantize_degrees)
from .redundancy import (CycleCheckSet, RedundantBaseRow, RedundantRow,
                         RepresentationSet, assemble_representation,
                         build_representation_set, combine_base_rows,
                         cycle_redundant_rows, enumerate_combinable_pairs,
                         lift_redundant_base_row, load_representation_set,
                         save_representation_set, wimax_redundant_pool)
from .sim import (CampaignConfig, CampaignResult, SnrPoint, awgn, encode,
                  load_campaign, modulate, replay_frame, run_campaign,
                  sigma_from_ebn0, write_results_csv)
from .tanner import GirthReport, girth, local_girth
from .wimax import (BaseMatrix, LiftParams, lift, renormalize,
                    wimax_base_matrix, wimax_parity_check)

__version__ = "0.1.0"
