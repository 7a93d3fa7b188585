"""Legal entity counting and provision recall, with a regex-based extractor.

The extractor only covers PROVISION and STATUTE mentions; richer annotations
produced by an external NER system can be imported through the corpus format
and flow through the same counting operations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "ENTITY_LABELS",
    "EntityAnnotation",
    "ProvisionKey",
    "ProvisionParseError",
    "extract_pattern_entities",
    "normalize_provision",
    "lent_cnt",
    "prov_recall",
]

ENTITY_LABELS = frozenset(
    {
        "COURT",
        "PETITIONER",
        "RESPONDENT",
        "JUDGE",
        "LAWYER",
        "DATE",
        "ORG",
        "GPE",
        "STATUTE",
        "PROVISION",
        "PRECEDENT",
        "CASE_NUMBER",
        "WITNESS",
        "OTHER_PERSON",
    }
)


class ProvisionParseError(ValueError):
    """Raised when a provision surface form cannot be normalized."""

    def __init__(self, surface: str):
        super().__init__(f"cannot parse provision surface {surface!r}")
        self.surface = surface


@dataclass(frozen=True)
class EntityAnnotation:
    label: str
    surface: str
    span: tuple[int, int] | None = None

    def __post_init__(self):
        if self.label not in ENTITY_LABELS:
            raise ValueError(f"unknown entity label {self.label!r}")
        if not self.surface:
            raise ValueError("entity surface must be nonempty")


@dataclass(frozen=True, order=True)
class ProvisionKey:
    kind: str
    number: str

    def __post_init__(self):
        if self.kind not in {"section", "article", "rule", "order", "clause"}:
            raise ValueError(f"unknown provision kind {self.kind!r}")
        if not self.number:
            raise ValueError("provision number must be nonempty")


_KIND_MAP = {
    "section": "section",
    "sections": "section",
    "sec": "section",
    "secs": "section",
    "article": "article",
    "articles": "article",
    "art": "article",
    "arts": "article",
    "rule": "rule",
    "rules": "rule",
    "order": "order",
    "orders": "order",
    "clause": "clause",
    "clauses": "clause",
}

# One provision number: digits, optional letter suffix, optional
# parenthesised sub-clauses, e.g. "302", "34A", "5(2)", "27(a-c)".
_NUM = r"\d+[A-Za-z]?(?:\s*\([0-9A-Za-z\-]+\))*"

_PROVISION_RE = re.compile(
    rf"\b(sections?|secs?\.?|articles?|arts?\.?|rules?|orders?|clauses?)\s+"
    rf"({_NUM})((?:\s*(?:,|and|&|or)\s*{_NUM})*)",
    re.IGNORECASE,
)
_NUM_RE = re.compile(_NUM)

_STATUTE_RE = re.compile(
    r"(?:[A-Z][A-Za-z'’]*\s+|\([A-Z][A-Za-z'’ ]*\)\s+)+"
    r"(?:Act,?\s+\d{4}|Act\b|Code\b)"
    r"|Constitution\s+of\s+India"
)


def _provision_matches(text: str) -> list[tuple[int, int, str, str]]:
    """(start, end, label, surface) for provisions, enumerations expanded."""
    out = []
    for m in _PROVISION_RE.finditer(text):
        keyword = m.group(1).rstrip(".")
        first_end = m.end(2)
        out.append((m.start(), first_end, "PROVISION", f"{keyword} {m.group(2)}"))
        for nm in _NUM_RE.finditer(m.group(3)):
            start = m.start(3) + nm.start()
            out.append((start, start + len(nm.group(0)), "PROVISION", f"{keyword} {nm.group(0)}"))
    return out


def extract_pattern_entities(text: str) -> list[EntityAnnotation]:
    """Regex scan for PROVISION and STATUTE mentions.

    Matches are returned left-to-right with non-overlapping spans; when two
    candidate matches overlap the longer one wins.  Provision enumerations
    ("Articles 14, 16 and 21") expand to one annotation per number.
    """
    candidates = _provision_matches(text)
    for m in _STATUTE_RE.finditer(text):
        candidates.append((m.start(), m.end(), "STATUTE", m.group(0)))
    candidates.sort(key=lambda c: (c[0], -(c[1] - c[0])))
    out: list[EntityAnnotation] = []
    last_end = -1
    for start, end, label, surface in candidates:
        if start < last_end:
            continue
        out.append(EntityAnnotation(label=label, surface=surface, span=(start, end)))
        last_end = end
    return out


def normalize_provision(e: EntityAnnotation) -> ProvisionKey:
    """Canonical (kind, number) key of a PROVISION annotation."""
    if e.label != "PROVISION":
        raise ValueError(f"expected PROVISION annotation, got {e.label}")
    m = re.match(rf"\s*([A-Za-z.]+)\s+({_NUM})\s*$", e.surface)
    if m is None:
        raise ProvisionParseError(e.surface)
    kind = _KIND_MAP.get(m.group(1).rstrip(".").lower())
    if kind is None:
        raise ProvisionParseError(e.surface)
    number = re.sub(r"[\s.,;:]", "", m.group(2)).lower()
    return ProvisionKey(kind=kind, number=number)


def lent_cnt(entities: list[EntityAnnotation]) -> int:
    """Total entity count across all labels, duplicates included."""
    return len(entities)


def provision_keys(entities: list[EntityAnnotation]) -> set[ProvisionKey]:
    return {normalize_provision(e) for e in entities if e.label == "PROVISION"}


def prov_recall(
    oag_entities: list[EntityAnnotation], teg_entities: list[EntityAnnotation]
) -> float | None:
    """Recall of normalized OAG provisions captured in the TEG summary.

    Returns None when the OAG summary mentions no provisions; callers must
    exclude such instances from macro averages.
    """
    po = provision_keys(oag_entities)
    if not po:
        return None
    pt = provision_keys(teg_entities)
    return len(po & pt) / len(po)
