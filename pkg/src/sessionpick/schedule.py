"""Programme schedule ingestion and normalization.

Reads channel schedules (CSV or JSON), validates them against the model
assumptions, and turns them into a weighted interval instance that the
rest of the library operates on. Times live on a single broadcast day at
minute resolution.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

MINUTES_PER_DAY = 1440

CSV_HEADER = ["channel", "title", "start", "end", "viewers"]


class ScheduleError(ValueError):
    """Raised when input data cannot be parsed into a schedule."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True, order=True)
class TimePoint:
    """A time of day in minutes since 00:00. 1440 means end of day (24:00)."""

    minutes: int

    def __post_init__(self) -> None:
        if not 0 <= self.minutes <= MINUTES_PER_DAY:
            raise ValueError(f"time {self.minutes} outside [0, {MINUTES_PER_DAY}] minutes")

    @classmethod
    def parse(cls, text: str) -> "TimePoint":
        parts = text.strip().split(":")
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"bad time {text!r}, expected HH:MM")
        hh, mm = int(parts[0]), int(parts[1])
        if mm > 59 or hh > 24 or (hh == 24 and mm != 0):
            raise ValueError(f"bad time {text!r}")
        return cls(hh * 60 + mm)

    def __str__(self) -> str:
        return f"{self.minutes // 60:02d}:{self.minutes % 60:02d}"


@dataclass(frozen=True)
class ProgrammeSlot:
    slot_id: str
    channel: str
    title: str
    start: TimePoint
    end: TimePoint
    viewers: int


@dataclass(frozen=True)
class ScheduleSet:
    slots: tuple[ProgrammeSlot, ...]

    @property
    def channels(self) -> set[str]:
        return {s.channel for s in self.slots}

    def __len__(self) -> int:
        return len(self.slots)


@dataclass(frozen=True)
class Vertex:
    """One weighted interval. Open-overlap semantics: (s, f) as an open set."""

    vertex_id: int
    s: int
    f: int
    w: int


@dataclass(frozen=True)
class IntervalInstance:
    """A set of weighted intervals with dense 0-based vertex ids.

    provenance maps vertex_id back to the slot_id it came from, when the
    instance was built from a schedule.
    """

    vertices: tuple[Vertex, ...]
    provenance: dict[int, str] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.vertices, key=lambda v: v.vertex_id))
        if [v.vertex_id for v in ordered] != list(range(len(ordered))):
            raise ValueError("vertex ids must be dense 0..n-1")
        for v in ordered:
            if v.s >= v.f:
                raise ValueError(f"vertex {v.vertex_id} has s >= f")
            if v.w < 0:
                raise ValueError(f"vertex {v.vertex_id} has negative weight")
        object.__setattr__(self, "vertices", ordered)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def total_weight(self) -> int:
        return sum(v.w for v in self.vertices)


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "ERROR" or "WARNING"
    slot_ids: tuple[str, ...]
    message: str


def _parse_viewers(text: str, line: int | None) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise ScheduleError(f"viewers {text!r} is not an integer", line) from None
    if value < 0:
        raise ScheduleError(f"viewers must be >= 0, got {value}", line)
    return value


def _make_slot(channel: str, title: str, start: str, end: str, viewers: str,
               line: int | None, seen: set[str]) -> ProgrammeSlot:
    channel = channel.strip()
    title = title.strip()
    if not channel:
        raise ScheduleError("empty channel name", line)
    if not title:
        raise ScheduleError("empty title", line)
    try:
        start_tp = TimePoint.parse(start)
        end_tp = TimePoint.parse(end)
    except ValueError as exc:
        raise ScheduleError(str(exc), line) from None
    # slot_id is the title; the input formats carry no separate id column
    if title in seen:
        raise ScheduleError(f"duplicate slot_id {title!r}", line)
    seen.add(title)
    return ProgrammeSlot(
        slot_id=title,
        channel=channel,
        title=title,
        start=start_tp,
        end=end_tp,
        viewers=_parse_viewers(viewers, line),
    )


def parse_schedule(source: bytes | str, fmt: str = "csv") -> ScheduleSet:
    """Parse CSV or JSON schedule data into a ScheduleSet, preserving order."""
    if isinstance(source, bytes):
        try:
            text = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScheduleError(f"input is not UTF-8: {exc}") from None
    else:
        text = source
    if fmt == "csv":
        return _parse_csv(text)
    if fmt == "json":
        return _parse_json(text)
    raise ScheduleError(f"unknown format {fmt!r}, expected csv or json")


def _parse_csv(text: str) -> ScheduleSet:
    if not text.strip():
        return ScheduleSet(())
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    header = [c.strip().lower() for c in rows[0]]
    if header != CSV_HEADER:
        raise ScheduleError(f"bad header {rows[0]!r}, expected {','.join(CSV_HEADER)}", line=1)
    slots: list[ProgrammeSlot] = []
    seen: set[str] = set()
    for i, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # blank line
        if len(row) != 5:
            raise ScheduleError(f"expected 5 fields, got {len(row)}", line=i)
        slots.append(_make_slot(*row, line=i, seen=seen))
    return ScheduleSet(tuple(slots))


def _parse_json(text: str) -> ScheduleSet:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScheduleError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("slots"), list):
        raise ScheduleError('expected a top-level object with a "slots" list')
    slots: list[ProgrammeSlot] = []
    seen: set[str] = set()
    for i, rec in enumerate(data["slots"]):
        if not isinstance(rec, dict):
            raise ScheduleError(f"slot {i} is not an object")
        missing = [k for k in CSV_HEADER if k not in rec]
        if missing:
            raise ScheduleError(f"slot {i} missing fields: {', '.join(missing)}")
        viewers = rec["viewers"]
        if isinstance(viewers, bool) or not isinstance(viewers, int):
            raise ScheduleError(f"slot {i}: viewers must be an integer")
        if viewers < 0:
            raise ScheduleError(f"slot {i}: viewers must be >= 0")
        for key in ("channel", "title", "start", "end"):
            if not isinstance(rec[key], str):
                raise ScheduleError(f"slot {i}: {key} must be a string")
        try:
            slots.append(_make_slot(rec["channel"], rec["title"], rec["start"],
                                    rec["end"], str(viewers), line=None, seen=seen))
        except ScheduleError as exc:
            raise ScheduleError(f"slot {i}: {exc}") from None
    return ScheduleSet(tuple(slots))


def serialize_schedule(s: ScheduleSet, fmt: str = "csv") -> str:
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for slot in s.slots:
            writer.writerow([slot.channel, slot.title, str(slot.start), str(slot.end), slot.viewers])
        return out.getvalue()
    if fmt == "json":
        records = [
            {"channel": sl.channel, "title": sl.title, "start": str(sl.start),
             "end": str(sl.end), "viewers": sl.viewers}
            for sl in s.slots
        ]
        return json.dumps({"slots": records}, indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def validate_schedule(s: ScheduleSet) -> list[ValidationIssue]:
    """Check the model assumptions. Never raises; returns a report.

    ERROR: a slot with start >= end (zero-length or wrapping past midnight).
    WARNING: two slots of the same channel whose open intervals overlap.
    """
    issues: list[ValidationIssue] = []
    for slot in s.slots:
        if slot.start >= slot.end:
            issues.append(ValidationIssue(
                "ERROR", (slot.slot_id,),
                f"slot {slot.slot_id!r} has start {slot.start} >= end {slot.end}"))
    by_channel: dict[str, list[ProgrammeSlot]] = {}
    for slot in s.slots:
        if slot.start < slot.end:  # degenerate slots already reported above
            by_channel.setdefault(slot.channel, []).append(slot)
    for channel in sorted(by_channel):
        group = sorted(by_channel[channel], key=lambda sl: (sl.start, sl.end, sl.slot_id))
        active: list[ProgrammeSlot] = []
        for slot in group:
            active = [a for a in active if a.end > slot.start]
            for other in active:
                issues.append(ValidationIssue(
                    "WARNING", (other.slot_id, slot.slot_id),
                    f"channel {channel!r}: slots {other.slot_id!r} and {slot.slot_id!r} overlap"))
            active.append(slot)
    return issues


def to_intervals(s: ScheduleSet, excluded: set[str] | frozenset[str] = frozenset()) -> IntervalInstance:
    """Build the weighted interval instance for the non-excluded slots.

    Excluded slots are dropped entirely, which leaves the optimum unchanged
    compared to keeping them at weight zero. Vertex ids are assigned in
    (start, end, slot_id) order.
    """
    known = {slot.slot_id for slot in s.slots}
    unknown = set(excluded) - known
    if unknown:
        raise ValueError(f"excluded slot ids not in schedule: {', '.join(sorted(unknown))}")
    kept = [slot for slot in s.slots if slot.slot_id not in excluded]
    for slot in kept:
        if slot.start >= slot.end:
            raise ValueError(f"slot {slot.slot_id!r} has start >= end; validate first")
    kept.sort(key=lambda sl: (sl.start, sl.end, sl.slot_id))
    vertices = tuple(
        Vertex(i, sl.start.minutes, sl.end.minutes, sl.viewers)
        for i, sl in enumerate(kept)
    )
    provenance = {i: sl.slot_id for i, sl in enumerate(kept)}
    return IntervalInstance(vertices, provenance)
