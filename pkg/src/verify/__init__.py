from .sampling import SegmentSampler, make_sampler
from .hypotheses import HypothesisResult, check_UB, check_LB, check_S, check_structure
from .diagnostics import q_values, diagnostics_Q
from .uniqueness import UniquenessResult, align_profiles, seeded_guess, uniqueness_harness
from .suite import VerificationReport, check_hypotheses, SAMPLING_NOTE, UNIQUENESS_TOL

__all__ = [
    'SegmentSampler',
    'make_sampler',
    'HypothesisResult',
    'check_UB',
    'check_LB',
    'check_S',
    'check_structure',
    'q_values',
    'diagnostics_Q',
    'UniquenessResult',
    'align_profiles',
    'seeded_guess',
    'uniqueness_harness',
    'VerificationReport',
    'check_hypotheses',
    'SAMPLING_NOTE',
    'UNIQUENESS_TOL',
]
