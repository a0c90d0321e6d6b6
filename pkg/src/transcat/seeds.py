"""Shipped seed data: primitive groups by degree and small abstract groups.

Every data file is listed with its sha256 digest in ``data/CHECKSUMS``; the
digest is checked before a file is parsed.
"""

from __future__ import annotations

import hashlib
from functools import lru_cache
from pathlib import Path

from .blocks import is_primitive
from .conjugacy import are_conjugate, invariant_key
from .perm import PermGroup, format_gens, parse_gens

DATA_DIR = Path(__file__).resolve().parent / "data"
PRIMITIVE_FILE = "primitive_groups.txt"
SMALL_FILE = "small_groups.txt"
TABLES_FILE = "reference_tables.txt"
FORMAT_VERSION = 1


class SeedDataError(RuntimeError):
    pass


def _digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _checksums(data_dir: Path) -> dict[str, str]:
    path = data_dir / "CHECKSUMS"
    if not path.exists():
        return {}
    out = {}
    for line in path.read_text().splitlines():
        if line.strip():
            digest, name = line.split()
            out[name] = digest
    return out


def update_checksum(path: Path):
    sums = _checksums(path.parent)
    sums[path.name] = _digest(path.read_bytes())
    text = "".join(f"{d}  {n}\n" for n, d in sorted(sums.items()))
    (path.parent / "CHECKSUMS").write_text(text)


def read_checked(name: str, data_dir: Path = DATA_DIR) -> list[str]:
    """Data lines of a seed file (comments dropped) after verifying its digest."""
    path = data_dir / name
    if not path.exists():
        raise SeedDataError(f"missing seed file {path}")
    raw = path.read_bytes()
    expected = _checksums(data_dir).get(name)
    if expected is None:
        raise SeedDataError(f"no checksum recorded for {name}")
    if _digest(raw) != expected:
        raise SeedDataError(f"checksum mismatch for {name}")
    lines = raw.decode().splitlines()
    if not lines or not lines[0].startswith(f"# version {FORMAT_VERSION}"):
        raise SeedDataError(f"{name}: unsupported format version")
    return [ln for ln in lines if ln and not ln.startswith("#")]


# ------------------------------------------------------------------ primitive

def write_primitive_file(path: Path, data: dict[int, list[tuple[str, PermGroup]]]):
    lines = [f"# version {FORMAT_VERSION}",
             "# primitive permutation groups up to conjugacy in Sym(n)",
             "# degree<TAB>name<TAB>order<TAB>generators (0-based image lists)"]
    for n in sorted(data):
        for name, G in data[n]:
            lines.append(f"{n}\t{name}\t{G.order}\t{format_gens(G.generators)}")
    path.write_text("\n".join(lines) + "\n")
    update_checksum(path)


@lru_cache(maxsize=None)
def _primitive_table(data_dir: str = str(DATA_DIR)) -> dict[int, list[tuple[str, int, str]]]:
    table: dict[int, list] = {}
    for ln in read_checked(PRIMITIVE_FILE, Path(data_dir)):
        deg, name, order, gens = ln.split("\t")
        table.setdefault(int(deg), []).append((name, int(order), gens))
    return table


def primitive_degrees() -> list[int]:
    return sorted(_primitive_table())


@lru_cache(maxsize=None)
def primitive_groups(n: int, validate: bool = True) -> tuple[tuple[str, PermGroup], ...]:
    """The primitive groups of degree n as (name, group), validated on first load."""
    table = _primitive_table()
    if n not in table:
        raise SeedDataError(f"no primitive seed data for degree {n}")
    out = []
    for name, order, text in table[n]:
        G = PermGroup(n, parse_gens(text, n))
        if validate:
            if G.order != order:
                raise SeedDataError(f"{name}: order {G.order}, expected {order}")
            if not (G.is_transitive() and is_primitive(G)):
                raise SeedDataError(f"{name}: not primitive")
        out.append((name, G))
    if validate:
        for i in range(len(out)):
            for j in range(i):
                a, b = out[i][1], out[j][1]
                if a.order == b.order and invariant_key(a) == invariant_key(b) \
                        and are_conjugate(a, b) is not None:
                    raise SeedDataError(f"{out[i][0]} and {out[j][0]} are conjugate")
    return tuple(out)


def primitive_group(n: int, name: str) -> PermGroup:
    for nm, G in primitive_groups(n):
        if nm == name:
            return G
    raise KeyError(name)


# ------------------------------------------------------------- small groups

def abelian_invariants(G: PermGroup) -> tuple[int, ...]:
    """Invariants (prime powers, ascending) of G/G' for a regular group G."""
    from .blocks import BlockSystem, block_action
    from .perm import derived_subgroup, perm_order
    D = derived_subgroup(G)
    Q = block_action(G, BlockSystem.from_labels(_orbit_labels(D)))
    orders = [perm_order(tuple(int(v) for v in row)) for row in Q.elements_array()]
    out = []
    primes = sorted({p for o in orders for p in _primes(o)})
    for p in primes:
        # number of elements of order dividing p^e, for e = 1, 2, ...
        counts = []
        e = 1
        while True:
            c = sum(1 for o in orders if (p ** e) % o == 0)
            counts.append(c)
            if e > 1 and c == counts[-2]:
                break
            e += 1
        ranks = [0] + [round(_log(c, p)) for c in counts]
        # ranks[e] - ranks[e-1] = number of cyclic factors of order >= p^e
        ge = [ranks[e] - ranks[e - 1] for e in range(1, len(ranks))]
        for e in range(len(ge)):
            exact = ge[e] - (ge[e + 1] if e + 1 < len(ge) else 0)
            out += [p ** (e + 1)] * exact
    return tuple(sorted(out))


def _orbit_labels(G: PermGroup) -> list[int]:
    lab = [0] * G.degree
    for i, o in enumerate(G.orbits()):
        for x in o:
            lab[x] = i
    return lab


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while n > 1:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    return out


def _log(c: int, p: int) -> float:
    e = 0
    while c > 1:
        c //= p
        e += 1
    return e


def write_small_file(path: Path, data: dict[int, list[tuple[int, str, list]]]):
    lines = [f"# version {FORMAT_VERSION}",
             "# abstract groups as right regular permutation groups; point 0 is the identity",
             "# order<TAB>index<TAB>name<TAB>abelian invariants<TAB>generators"]
    for order in sorted(data):
        for idx, name, gens in data[order]:
            G = PermGroup(order, gens)
            inv = ",".join(map(str, abelian_invariants(G))) or "1"
            lines.append(f"{order}\t{idx}\t{name}\t{inv}\t{format_gens(gens) if gens else '-'}")
    path.write_text("\n".join(lines) + "\n")
    update_checksum(path)


class SmallGroup:
    def __init__(self, order: int, index: int, name: str, group: PermGroup):
        self.order = order
        self.index = index
        self.name = name
        self.group = group

    @property
    def id(self) -> tuple[int, int]:
        return (self.order, self.index)

    def __repr__(self):
        return f"SmallGroup({self.order},{self.index}) {self.name}"


@lru_cache(maxsize=None)
def _small_table() -> dict[int, list[tuple[int, str, str, str]]]:
    table: dict[int, list] = {}
    for ln in read_checked(SMALL_FILE):
        order, idx, name, inv, gens = ln.split("\t")
        table.setdefault(int(order), []).append((int(idx), name, inv, gens))
    return table


def small_group_orders() -> list[int]:
    return sorted(_small_table())


@lru_cache(maxsize=None)
def small_groups(order: int) -> tuple[SmallGroup, ...]:
    table = _small_table()
    if order not in table:
        raise SeedDataError(f"no small-group seed data for order {order}")
    out = []
    for idx, name, inv, text in table[order]:
        gens = [] if text == "-" else parse_gens(text, order)
        G = PermGroup(order, gens)
        if G.order != order or (order > 1 and not G.is_transitive()):
            raise SeedDataError(f"small group {order}/{idx} is not regular of order {order}")
        got = ",".join(map(str, abelian_invariants(G))) or "1"
        if got != inv:
            raise SeedDataError(f"small group {order}/{idx}: abelian invariants {got}, expected {inv}")
        out.append(SmallGroup(order, idx, name, G))
    return tuple(out)


def small_group(order: int, index: int) -> SmallGroup:
    return small_groups(order)[index - 1]
