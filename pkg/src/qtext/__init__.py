"""Translatability analysis for families of quantum states given by Gram
matrices: validation, overlap-graph recognition, decision, witness
synthesis, and numeric verification."""

from .texts import (
    BadDiagonal,
    DuplicateStates,
    NonFinite,
    NotHermitian,
    NotPSD,
    SizeMismatch,
    StateEmbedding,
    Text,
    TextError,
    TextProperties,
    embed_text,
    gram_of,
    null_index_set,
    subtext,
    text_properties,
    texts_equivalent,
    validate_text,
)
from .graphs import (
    ForbiddenWitness,
    GraphClass,
    GraphError,
    InvalidShape,
    NotConnected,
    NotWellSplit,
    RecognitionResult,
    SimpleGraph,
    Splitting,
    TooLarge,
    WellSplitShape,
    all_splittings,
    connected_components,
    graph_of_text,
    graphs_isomorphic,
    induced_subgraph,
    make_graph,
    maximal_cliques,
    parameterize,
    recognize,
    shape_to_graph,
    split_by_definition,
)
from .translation import (
    DegenerateB,
    DegenerateNormalizer,
    DimensionMismatch,
    GramMismatch,
    Infeasible,
    OmegaSystem,
    PartialGram,
    QOutOfRange,
    TranslationError,
    TranslationWitness,
    WitnessReport,
    Q_from_q,
    build_omega,
    check_witness,
    complete_output_gram,
    output_gram,
    overlap_residual,
    q_from_Q,
    restrict_witness,
    synthesize_unitary,
    tablet_overlaps,
    witness_from_overlaps,
)
from .classify import (
    BorderlineSignature,
    Decision,
    Decomposition,
    EigenSignature,
    FullyQuantumDecision,
    HasOrthogonalPair,
    decide_fully_quantum,
    decide_translatable,
    decide_zero_translatable,
    hadamard_inverse_signature,
)
from .synth import (
    BadOverlapPattern,
    NotClassical,
    NotUniformRealEfficient,
    QTooLarge,
    RealizeResult,
    SearchBudgetExhausted,
    SearchOutcome,
    SynthError,
    Untranslatable,
    attach_classical,
    central_translate_uniform,
    clone_classical,
    realize_graph,
    search_translation,
    translate,
)
from .generators import GenSpec, InfeasibleSpec, OracleReport, gen_text, oracle_feasible

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
