"""CoS layer: trace construction, rendering, parsing and SFT datasets."""

from chain_of_scheduling.costrace.dataset import SftRecord, build_sft_pair, emit_sft_dataset
from chain_of_scheduling.costrace.parse import ParsedTrace, load_model_output, parse_trace
from chain_of_scheduling.costrace.render import TraceStyle, render_prompt, render_trace
from chain_of_scheduling.costrace.trace import (
    CosTrace,
    Integration,
    VerificationEntry,
    build_trace,
)

__all__ = [
    "CosTrace",
    "Integration",
    "ParsedTrace",
    "SftRecord",
    "TraceStyle",
    "VerificationEntry",
    "build_sft_pair",
    "build_trace",
    "emit_sft_dataset",
    "load_model_output",
    "parse_trace",
    "render_prompt",
    "render_trace",
]
