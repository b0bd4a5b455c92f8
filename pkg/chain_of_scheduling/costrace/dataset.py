"""SFT dataset emission: one (prompt, CoS completion) record per instance."""

from __future__ import annotations

import logging
from typing import Iterable, TextIO

from pydantic import BaseModel, Field

from chain_of_scheduling.core.model import Instance
from chain_of_scheduling.costrace.render import TraceStyle, render_prompt, render_trace
from chain_of_scheduling.costrace.trace import build_trace

logger = logging.getLogger(__name__)


class SftRecord(BaseModel):
    prompt: str = Field(..., description="Serialized scheduling problem")
    completion: str = Field(..., description="Rendered CoS trace")


def build_sft_pair(
    instance: Instance, k: int, style: TraceStyle = TraceStyle.FULL, seed: int = 0
) -> SftRecord:
    trace = build_trace(instance, k)
    return SftRecord(
        prompt=render_prompt(instance),
        completion=render_trace(trace, instance, style, seed),
    )


def emit_sft_dataset(
    instances: Iterable[Instance],
    k: int,
    out: TextIO,
    style: TraceStyle = TraceStyle.FULL,
    seed: int = 0,
) -> int:
    """
    Write JSON lines to ``out`` in input order and return the record count.

    The i-th record is rendered with ``seed + i``.
    """
    count = 0
    for instance in instances:
        record = build_sft_pair(instance, k, style, seed + count)
        out.write(record.model_dump_json())
        out.write("\n")
        count += 1
        logger.debug("SFT record %d for %s", count, instance.label)
    logger.info("Wrote %d SFT records (k=%d, style=%s)", count, k, style.value)
    return count
