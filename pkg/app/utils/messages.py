"""
Centralized message strings for errors, logs and CLI reports.

Usage:
    from app.utils.messages import MSG

    raise SizeMismatchError(MSG.SIZE_MISMATCH.format(left=3, right=4))
"""


class Messages:
    """All user-facing messages."""

    # ==================== GROUP / PARTITIONS ====================
    SIZE_MISMATCH = "Ground-set sizes differ: {left} vs {right}"
    NOT_A_PERMUTATION = "Not a permutation of 1..{n}: {image}"
    BAD_PERMUTATION_TEXT = "Cannot parse permutation '{text}' (expected comma-separated 1-based images)"
    ENUMERATION_CAP = "n={n} exceeds the enumeration cap {cap}"
    NOT_A_PARTITION = "Not a partition (weakly decreasing positive parts): {parts}"
    BAD_PARTITION_TEXT = "Cannot parse partition '{text}' (expected comma-separated parts)"
    PARTITION_TOO_LARGE = "all_partitions supports n <= {cap}, got {n}"
    WEIGHT_MISMATCH = "Partition weights differ: {left} vs {right}"
    HOOK_RANGE = "Hook length ell must satisfy 0 <= ell <= n-1 (n={n}, ell={ell})"
    TRANSPOSITION_RATIO_SMALL_N = "Transposition ratio needs n >= 2, got n={n}"

    # ==================== DISTRIBUTIONS ====================
    EMPTY_MIXTURE = "A mixture needs at least one atom"
    NON_POSITIVE_WEIGHT = "Atom weight must be positive, got {w} for {perm}"
    DUPLICATE_ATOM = "Duplicate atom {perm}"
    WEIGHTS_NOT_NORMALIZED = "Weights sum to {total}, outside tolerance {tol} of 1"
    NOT_HEAVY = "Atom {perm} has weight {w} below the heaviness floor {epsilon}"
    TOO_MANY_ATOMS = "Cannot pick {k} distinct rankings of {n} elements"
    PMF_NOT_NORMALIZED = "Dense pmf sums to {total}"
    PMF_NEGATIVE = "Dense pmf has negative entries (min {value})"
    PMF_SHAPE = "Dense pmf over S_{n} needs {expected} values, got {got}"
    TUPLE_LENGTHS = "Tuples must have equal length: {ibar} vs {jbar}"
    TUPLE_REPEATED = "Tuple entries must be distinct: {tup}"
    TUPLE_RANGE = "Tuple entries must lie in 1..{n}: {tup}"

    # ==================== NOISE ====================
    PBAR_LENGTH = "Symmetric noise over S_{n} needs n+1={expected} probabilities, got {got}"
    PBAR_SUM = "Symmetric noise probabilities sum to {total}, not 1"
    METROPOLIS_STEPS = "Metropolis needs at least one step, got {steps}"
    DIST_ELL = "dist(theta, ell) needs ell >= 1, got {ell}"

    # ==================== FOURIER / ESTIMATION ====================
    TABLOID_CAP = "Hook representation dimension {dim} exceeds the cap {cap} (n={n}, ell={ell})"
    EMPTY_SAMPLES = "At least one sample is required"
    SAMPLE_WIDTH = "Samples rank {got} elements, the noise model ranks {n}"
    SAMPLE_RANGE = "Sample images must lie in 0..{top} (0-based), got {low}..{high}"
    SINGULAR_NOISE = "Noise matrix is numerically singular: sigma_min={sigma:.3e} < floor {floor:.1e} (n={n}, ell={ell})"
    INSUFFICIENT_SAMPLES = "Got {got} samples, the budget for delta={delta}, tau={tau} is {budget}"
    QUERY_LENGTH = "Query tuples have length {got}, matrix is for ell={ell}"
    NO_MATRIX_FOR_LENGTH = "No marginal matrix for tuple length {s} (available: {available})"

    # ==================== LEARNER ====================
    SLACK_BELOW_DELTA = "LP slack {slack} is below the oracle accuracy {delta}"
    CANDIDATE_OVERFLOW = "{count} candidates exceed the cap {cap}"
    LP_INFEASIBLE = "Stage LP infeasible with slack {slack:.3e} ({detail})"
    NO_CANDIDATES = "Stage {ell}: no candidate prefixes (1-way marginals all below {threshold:.3f})"
    SUPPORT_OVERFLOW = "Stage {ell}: {count} prefixes survive pruning, more than k={k}"
    EMPTY_AFTER_PRUNING = "Stage {ell}: pruning at {threshold:.3f} removed every candidate"
    NOISE_UNIDENTIFIABLE = "Noise is unidentifiable at tuple length {ell}: min multiplier {value:.3e} < floor {floor:.1e}"
    SUPPORT_BOUND = "Function has {count} support points, more than the bound k={k}"
    L1_NOT_ONE = "Function must have l1 norm 1, got {norm}"
    SAMPLES_NEED_NOISE = "Sampled mode needs a noise model"

    # ==================== LOWER BOUND ====================
    HARD_PAIR_PARAMS = "Hard pair needs t >= j >= 1, got t={t}, j={j}"

    # ==================== CLI REPORTS ====================
    RUN_HEADER = "rankmix {command} | seed={seed}"
    RUN_VERSIONS = "versions: numpy={numpy} scipy={scipy} pydantic={pydantic}"
    RUN_CONFIG = "config: {config}"
    VERIFY_PASS = "✅ {suite}: {name} (max deviation {deviation:.3e})"
    VERIFY_FAIL = "❌ {suite}: {name} (max deviation {deviation:.3e})"
    VERIFY_SUMMARY = "{passed}/{total} identities hold"
    LEARN_TRIAL = "trial {trial}: atoms={atoms} tv={tv}"
    LEARN_SUMMARY = "learned {atoms} atoms in {seconds:.2f}s (samples used: {samples})"
    SUPPORT_MISMATCH = "Stage support differs from the true prefix support at stages {stages}"
    CONTRACT_ERROR = "contract error: {error}"
    IO_ERROR = "I/O error: {error}"
    BAD_INPUT_FILE = "{path} is not a valid {what} document: {error}"
    MISSING_INPUT = "Provide {what}"


# Singleton instance for easy import
MSG = Messages()
