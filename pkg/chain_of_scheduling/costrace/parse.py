"""
Lenient parser for CoS traces emitted by models.

Sequences are read by matching the instance's own event ids (longest first),
so ids holding spaces, commas, brackets or dots survive a render/parse round
trip. Unknown ids and malformed lines become issues instead of errors. The
extracted sequence is returned as-is; checking and repairing it is left to
the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
import json
import logging
from pathlib import Path
import re
from typing import Optional, Union

from chain_of_scheduling.core.errors import TraceParseError
from chain_of_scheduling.core.model import Instance
from chain_of_scheduling.costrace.render import NONE_MARK

logger = logging.getLogger(__name__)

_HEADER = re.compile(
    r"^[\s#*>_-]*(exploration|verification|integration)[\s*_]*:[\s*_]*(.*)$",
    re.IGNORECASE,
)
_RANK_PREFIX = re.compile(r"^(?:[-*]\s*)?(?:candidate\s*)?\d+\s*[.:)]\s*", re.IGNORECASE)
_BRACKETED = re.compile(r"\[[^\]]*\]|\([^)]*\)")
_SEPARATORS = ("->", "→", ",")
_CLOSERS = {"[": "]", "(": ")"}
_ID_BOUNDARIES = _SEPARATORS + ("[", "(", ".", ";", "*", "`", "'", '"')
_FILLER = "*`'\""
_TOKEN_PUNCTUATION = ".,;*`'\""
_NUMBER = r"(-?\d+(?:\.\d+)?)"
_VERIFICATION_SUM = re.compile(r"=\s*" + _NUMBER + r"\s*\.?\s*$")
_BEST = re.compile(
    r"best schedule\s*:\s*(.*?)(?:\s+with (?:total )?utility\s*(?:of\s*)?" + _NUMBER + r")?\s*\.?\s*$",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class ParsedTrace:
    candidates: tuple[tuple[str, ...], ...]
    sums: tuple[float, ...]
    integration: Optional[tuple[str, ...]]
    integration_utility: Optional[float]
    sequence: tuple[str, ...]
    source: str
    issues: tuple[str, ...]


def _split_sections(text: str) -> dict[str, list[str]]:
    sections: dict[str, list[str]] = {}
    current: Optional[str] = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        header = _HEADER.match(line)
        if header:
            current = header.group(1).lower()
            sections.setdefault(current, [])
            rest = header.group(2).strip()
            if rest:
                sections[current].append(rest)
            continue
        if current is not None:
            sections[current].append(line)
    return sections


def _skip_separators(body: str, pos: int) -> int:
    while pos < len(body):
        separator = next((sep for sep in _SEPARATORS if body.startswith(sep, pos)), None)
        if separator is not None:
            pos += len(separator)
        elif body[pos].isspace():
            pos += 1
        else:
            break
    return pos


def _segment_end(body: str, pos: int) -> int:
    """Index of the next separator at or after ``pos``; bracketed groups are skipped whole."""
    while pos < len(body):
        char = body[pos]
        if char in _CLOSERS:
            close = body.find(_CLOSERS[char], pos + 1)
            if close < 0:
                return len(body)
            pos = close + 1
        elif body.startswith(_SEPARATORS, pos):
            return pos
        else:
            pos += 1
    return len(body)


def _match_known_id(body: str, pos: int, known_ids: list[str]) -> Optional[str]:
    """Longest known id starting at ``pos`` and ending on a word boundary."""
    for event_id in known_ids:
        if not body.startswith(event_id, pos):
            continue
        end = pos + len(event_id)
        if end == len(body) or body[end].isspace() or body.startswith(_ID_BOUNDARIES, end):
            return event_id
    return None


def _known_ids(instance: Instance) -> list[str]:
    return sorted(instance.event_ids, key=len, reverse=True)


def _parse_sequence(
    body: str, known_ids: list[str], issues: list[str], where: str
) -> tuple[str, ...]:
    body = body.strip()
    if not body or body.rstrip(".").strip().lower() == NONE_MARK:
        return ()
    ids = []
    pos = _skip_separators(body, 0)
    while pos < len(body):
        event_id = _match_known_id(body, pos, known_ids)
        if event_id is not None:
            ids.append(event_id)
            end = _segment_end(body, pos + len(event_id))
        elif body[pos] in _FILLER:
            # Markdown emphasis or quotes around an id.
            pos += 1
            continue
        else:
            end = _segment_end(body, pos)
            tokens = _BRACKETED.sub(" ", body[pos:end]).split()
            token = tokens[0].strip(_TOKEN_PUNCTUATION) if tokens else ""
            if token:
                issues.append(f"{where}: unknown event id {token!r}")
        pos = _skip_separators(body, max(end, pos + 1))
    return tuple(ids)


def parse_trace(text: str, instance: Instance) -> ParsedTrace:
    """Extract candidate, sum and final sequences from a trace text."""
    issues: list[str] = []
    known_ids = _known_ids(instance)
    sections = _split_sections(text or "")

    candidates = []
    for number, line in enumerate(sections.get("exploration", []), start=1):
        body = _RANK_PREFIX.sub("", line, count=1)
        candidates.append(
            _parse_sequence(body, known_ids, issues, f"exploration line {number}")
        )

    sums = []
    for number, line in enumerate(sections.get("verification", []), start=1):
        match = _VERIFICATION_SUM.search(line)
        if match is None:
            issues.append(f"verification line {number}: no total found in {line!r}")
            continue
        sums.append(float(match.group(1)))

    integration: Optional[tuple[str, ...]] = None
    integration_utility: Optional[float] = None
    integration_lines = sections.get("integration") or [
        line.strip() for line in (text or "").splitlines() if _BEST.search(line.strip())
    ]
    for line in integration_lines:
        match = _BEST.search(line)
        if match is not None:
            integration = _parse_sequence(match.group(1), known_ids, issues, "integration")
            if match.group(2) is not None:
                integration_utility = float(match.group(2))
            break
    if integration is None and integration_lines:
        issues.append("integration: no 'Best schedule' line, using first line")
        integration = _parse_sequence(integration_lines[0], known_ids, issues, "integration")

    if integration is not None:
        sequence, source = integration, "integration"
    elif candidates:
        sequence, source = candidates[-1], "exploration"
        issues.append("integration section missing, using last exploration candidate")
    else:
        raise TraceParseError("No schedule found in trace text", tuple(issues))

    for issue in issues:
        logger.warning("Trace parse: %s", issue)

    return ParsedTrace(
        candidates=tuple(candidates),
        sums=tuple(sums),
        integration=integration,
        integration_utility=integration_utility,
        sequence=sequence,
        source=source,
        issues=tuple(issues),
    )


def load_model_output(path: Union[str, Path]) -> str:
    """Read a model output file: ``{"text": ...}`` JSON or raw text."""
    with open(path, "r", encoding="utf-8") as handle:
        raw = handle.read()
    try:
        document = json.loads(raw)
    except json.JSONDecodeError:
        return raw
    if isinstance(document, dict) and isinstance(document.get("text"), str):
        return document["text"]
    return raw
