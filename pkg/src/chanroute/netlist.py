"""Channel instance model: the two-row terminal format, nets, macro features."""

from __future__ import annotations

from dataclasses import dataclass

TOP = "top"
BOTTOM = "bottom"


class NetlistError(ValueError):
    """Base class for malformed channel instances."""


class EmptyInput(NetlistError):
    pass


class LengthMismatch(NetlistError):
    pass


class BadToken(NetlistError):
    pass


class SingletonNet(NetlistError):
    pass


@dataclass(frozen=True)
class ChannelSpec:
    """A channel instance: one row of terminals along each of the top and
    bottom edges.  Entries are positive net ids, 0 marks a vacant position.
    """

    columns: int
    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        if len(self.top) != self.columns or len(self.bottom) != self.columns:
            raise LengthMismatch(
                f"rows must both have {self.columns} entries "
                f"(got {len(self.top)} top, {len(self.bottom)} bottom)"
            )
        counts: dict[int, int] = {}
        for value in self.top + self.bottom:
            if value < 0:
                raise BadToken(f"negative net id {value}")
            if value:
                counts[value] = counts.get(value, 0) + 1
        for nid, n in sorted(counts.items()):
            if n < 2:
                raise SingletonNet(f"net {nid} has a single terminal")

    @property
    def net_ids(self) -> tuple[int, ...]:
        return tuple(sorted({v for v in self.top + self.bottom if v}))

    @property
    def terminal_count(self) -> int:
        return sum(1 for v in self.top + self.bottom if v)


@dataclass(frozen=True, order=True)
class Terminal:
    """One fixed pin position.  Ordering is (column, side) with bottom
    sorting before top, which fixes the canonical terminal order of a net."""

    column: int
    side: str


@dataclass(frozen=True)
class Net:
    """One electrical equivalence class.  ``subnet`` is None for a whole net
    and the chain index for a 2-terminal piece of a decomposed net."""

    id: int
    terminals: tuple[Terminal, ...]
    subnet: int | None = None

    @property
    def leftmost(self) -> int:
        return min(t.column for t in self.terminals)

    @property
    def rightmost(self) -> int:
        return max(t.column for t in self.terminals)

    @property
    def key(self):
        """Graph node identity; distinguishes subnets of one parent net."""
        return self.id if self.subnet is None else (self.id, self.subnet)

    @property
    def needs_trunk(self) -> bool:
        return self.leftmost < self.rightmost


@dataclass(frozen=True)
class FeatureVector:
    """Macro-level instance features keyed on by the strategy bank."""

    left_count: int
    right_count: int
    balance: float
    net_count: int
    density: int = 0


def parse_netlist(text: str) -> ChannelSpec:
    """Parse the two-row text format.

    Grammar: optional ``#`` comment lines, then exactly one ``TOP:`` line and
    one ``BOT:`` line of space-separated nonnegative integers.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise EmptyInput("no TOP/BOT lines found")
    if len(lines) != 2:
        raise BadToken(f"expected exactly TOP and BOT lines, got {len(lines)} lines")

    def row(line: str, prefix: str) -> tuple[int, ...]:
        if not line.startswith(prefix):
            raise BadToken(f"expected line starting with {prefix!r}: {line!r}")
        values = []
        for tok in line[len(prefix):].split():
            try:
                v = int(tok)
            except ValueError:
                raise BadToken(f"non-integer token {tok!r}") from None
            if v < 0:
                raise BadToken(f"negative net id {tok!r}")
            values.append(v)
        return tuple(values)

    top = row(lines[0], "TOP:")
    bottom = row(lines[1], "BOT:")
    if not top and not bottom:
        raise EmptyInput("empty terminal rows")
    if len(top) != len(bottom):
        raise LengthMismatch(f"TOP has {len(top)} entries, BOT has {len(bottom)}")
    return ChannelSpec(columns=len(top), top=top, bottom=bottom)


def serialize_netlist(spec: ChannelSpec) -> str:
    """Inverse of parse_netlist (modulo comments)."""
    return (
        "TOP: " + " ".join(str(v) for v in spec.top) + "\n"
        "BOT: " + " ".join(str(v) for v in spec.bottom) + "\n"
    )


def nets_of(spec: ChannelSpec) -> tuple[Net, ...]:
    """Nets of the instance, sorted by leftmost column then net id."""
    by_id: dict[int, list[Terminal]] = {}
    for column, value in enumerate(spec.top):
        if value:
            by_id.setdefault(value, []).append(Terminal(column, TOP))
    for column, value in enumerate(spec.bottom):
        if value:
            by_id.setdefault(value, []).append(Terminal(column, BOTTOM))
    nets = [Net(nid, tuple(sorted(ts))) for nid, ts in by_id.items()]
    nets.sort(key=lambda n: (n.leftmost, n.id))
    return tuple(nets)


def extract_features(spec: ChannelSpec) -> FeatureVector:
    """Count occupied terminal positions left/right of the channel midpoint.

    A column counts as "left" when its index is below floor(columns / 2).
    The density field is left at 0 here; callers that have run the
    constraints analysis fill it in.
    """
    mid = spec.columns // 2
    left = right = 0
    for row in (spec.top, spec.bottom):
        for column, value in enumerate(row):
            if value:
                if column < mid:
                    left += 1
                else:
                    right += 1
    total = left + right
    balance = left / total if total else 0.0
    return FeatureVector(
        left_count=left,
        right_count=right,
        balance=balance,
        net_count=len(spec.net_ids),
    )
