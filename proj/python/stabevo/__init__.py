"""Evolutionary search for stabiliser quantum error-correction codes."""

from ._core import (  # noqa: F401
    CanonicalCode,
    CodeGenotype,
    CodeShape,
    DataError,
    DistanceReport,
    ErrorModel,
    F2Matrix,
    FitnessReport,
    LinCombSet,
    PauliOp,
    QDistEvolResult,
    ResourceLimitError,
    RrefResult,
    SearchResult,
    StabiliserCode,
    StandardFormResult,
    TraceRow,
    __version__,
    build_code,
    css_decode,
    decode_genotype,
    distance_exact,
    encode_genotype,
    encoding_circuit,
    genotype_length,
    hamming_profile,
    in_span,
    lincombs_up_to,
    qdistevol,
    rref,
    run_cli,
    run_search,
    standard_form,
    symplectic_product,
    tableau,
    uer_approx,
    uer_exact,
)
