"""Per-degree classification of transitive groups and the catalogue files.

A degree n is split into parts: the primitive groups, and for every block size
k (1 < k < n, k | n) and every transitive group H of degree n/k the groups
whose signature is (k, index of H).  Each part is computed by one engine:

* descent from Sym(k) wr H (Engine A) when k <= 4 and the wreath product is small,
* the layered extension (Engine B) for other block sizes 2, 3, 4,
* the Goursat construction for two blocks (n = 2k, k >= 5).

A group is kept in a part only if its signature, the least (k, top index) over
its minimal block systems, is the part's own.  Catalogue indices follow the
canonical order (order, serialized invariant key, production order).
"""

from __future__ import annotations

import hashlib
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .blocks import Signature, is_primitive, minimal_block_size, signature, wreath_product
from .conjugacy import are_conjugate, invariant_key, unique_up_to_conjugacy
from .descent import DESCENT_BUDGET, descend_part
from .goursat import goursat_two_blocks
from .layer_engine import extend_layered
from .lattice import is_minimal_transitive
from .perm import PermGroup, format_cycles, parse_gens, random_generators
from .seeds import DATA_DIR, TABLES_FILE, primitive_groups, read_checked

log = logging.getLogger(__name__)

CATALOGUE_NAME = "catalogue.txt"
MANIFEST_NAME = "manifest.txt"


class UnsupportedPart(RuntimeError):
    """No engine can compute a part at desk scale."""


# ------------------------------------------------------------------ entries

@dataclass
class CatalogueEntry:
    degree: int
    index: int
    group: PermGroup
    primitive: bool
    minimal: bool
    signature: Optional[Signature]

    @property
    def order(self) -> int:
        return self.group.order

    def fields(self) -> list[str]:
        return [str(self.order), "P" if self.primitive else "I", "M" if self.minimal else "-",
                str(self.signature) if self.signature else "-",
                format_generators(self.group.generators)]

    def line(self) -> str:
        return "\t".join([str(self.degree), str(self.index)] + self.fields())


def format_generators(gens) -> str:
    return ";".join(format_cycles(g) for g in gens) if gens else "()"


def parse_generators(text: str, n: int) -> list:
    if text.strip() == "()":
        return []
    return [g for g in parse_gens(text, n) if g != tuple(range(n))]


class Catalogue:
    """The transitive groups of one degree in canonical order."""

    def __init__(self, degree: int, entries: Sequence[CatalogueEntry], seed: int = 1):
        self.degree = degree
        self.entries = list(entries)
        self.seed = seed
        self._buckets: dict = {}
        for e in self.entries:
            self._buckets.setdefault(invariant_key(e.group), []).append(e)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index: int) -> CatalogueEntry:
        """Entry by its 1-based index."""
        return self.entries[index - 1]

    @property
    def groups(self) -> list[PermGroup]:
        return [e.group for e in self.entries]

    @property
    def minimal_count(self) -> int:
        return sum(e.minimal for e in self.entries)

    def identify(self, G: PermGroup) -> int:
        """Index of the entry conjugate to the transitive group G."""
        if G.degree != self.degree:
            raise ValueError(f"degree {G.degree} group in a degree {self.degree} catalogue")
        for e in self._buckets.get(invariant_key(G), []):
            if are_conjugate(G, e.group) is not None:
                return e.index
        raise LookupError(f"group of order {G.order} is not in the degree {self.degree} catalogue")

    def text(self) -> str:
        head = [f"# transitive groups of degree {self.degree}",
                f"# seed {self.seed}",
                "# degree\tindex\torder\tP|I\tM|-\tsignature\tgenerators"]
        return "\n".join(head + [e.line() for e in self.entries]) + "\n"

    @staticmethod
    def parse(text: str) -> "Catalogue":
        entries = []
        seed = 1
        degree = None
        for ln in text.splitlines():
            if ln.startswith("# seed"):
                seed = int(ln.split()[2])
            if not ln or ln.startswith("#"):
                continue
            deg, idx, order, prim, mini, sig, gens = ln.split("\t")
            degree = int(deg)
            G = PermGroup(degree, parse_generators(gens, degree))
            if G.order != int(order):
                raise ValueError(f"catalogue entry {deg}/{idx}: order mismatch")
            s = None if sig == "-" else Signature(*map(int, sig.split(",")))
            entries.append(CatalogueEntry(degree, int(idx), G, prim == "P", mini == "M", s))
        if degree is None:
            raise ValueError("empty catalogue")
        return Catalogue(degree, entries, seed)


# -------------------------------------------------------------------- store

class CatalogueStore:
    """Catalogues by degree, loaded from ``out_dir`` or built on demand."""

    def __init__(self, out_dir: Optional[Path] = None, seed: int = 1, workers: int = 1,
                 budget: int = DESCENT_BUDGET):
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.seed = seed
        self.workers = workers
        self.budget = budget
        self._cache: dict[int, Catalogue] = {}

    def __contains__(self, n: int) -> bool:
        return n >= 2

    def __getitem__(self, n: int) -> Catalogue:
        return self.get(n)

    def degree_dir(self, n: int) -> Path:
        assert self.out_dir is not None
        return self.out_dir / f"degree_{n:02d}"

    def get(self, n: int) -> Catalogue:
        if n in self._cache:
            return self._cache[n]
        if self.out_dir is not None:
            path = self.degree_dir(n) / CATALOGUE_NAME
            if path.exists():
                cat = Catalogue.parse(path.read_text())
                self._cache[n] = cat
                return cat
        cat = classify_degree(n, self)
        self._cache[n] = cat
        return cat

    def put(self, cat: Catalogue):
        self._cache[cat.degree] = cat
        if self.out_dir is not None:
            d = self.degree_dir(cat.degree)
            d.mkdir(parents=True, exist_ok=True)
            (d / CATALOGUE_NAME).write_text(cat.text())


# -------------------------------------------------------------------- parts

@dataclass
class PartSpec:
    degree: int
    part_id: str
    engine: str
    k: int = 0
    top_index: int = 0

    @property
    def file_name(self) -> str:
        return self.part_id.replace(",", "_").replace(":", "_") + ".txt"


def choose_engine(k: int, H: PermGroup, budget: int = DESCENT_BUDGET) -> str:
    """Engine for the part with block size k over the top group H."""
    m = H.degree
    if k in (2, 3, 4):
        W = wreath_product(k, H).product.order
        return "descent" if W <= budget else "layered"
    if m == 2:
        return "goursat"
    raise UnsupportedPart(f"block size {k} over a top of degree {m} has no desk-scale engine")


def plan_parts(n: int, store: CatalogueStore) -> list[PartSpec]:
    """Part list covering every signature of degree n plus the primitive part."""
    parts = [PartSpec(n, "primitive", "seeds")]
    for k in range(2, n):
        if n % k:
            continue
        m = n // k
        tops = store.get(m)
        if k not in (2, 3, 4) and m == 2:
            parts.append(PartSpec(n, f"two-block:{k}", "goursat", k, 1))
            continue
        for e in tops:
            parts.append(PartSpec(n, f"{k},{e.index}", choose_engine(k, e.group, store.budget), k, e.index))
    return parts


def run_part(spec: PartSpec, store: CatalogueStore, engine: Optional[str] = None) -> list[PermGroup]:
    """Groups of one part, up to conjugacy, with their signature checked."""
    n = spec.degree
    if spec.part_id == "primitive":
        return [G for _, G in primitive_groups(n)]
    k, m = spec.k, n // spec.k
    engine = engine or spec.engine
    if engine == "goursat":
        raw = goursat_two_blocks(k, store.get(k).groups, seed=store.seed)
    else:
        H = store.get(m)[spec.top_index].group
        if engine == "descent":
            raw = descend_part(k, H, budget=max(store.budget, DESCENT_BUDGET))
        elif engine == "layered":
            raw = extend_layered(k, H, dedup=False)
        else:
            raise ValueError(f"unknown engine {engine}")
    want = Signature(k, spec.top_index)
    keep = [G for G in raw if G.is_transitive() and minimal_block_size(G) == k
            and signature(G, store) == want]
    return unique_up_to_conjugacy(keep)


def short_generators(G: PermGroup, seed: int) -> PermGroup:
    gens = random_generators(G, random.Random(seed))
    if len(gens) >= len(G.generators):
        return G
    return PermGroup(G.degree, gens)


def _part_text(spec: PartSpec, groups: Sequence[PermGroup], seed: int) -> str:
    head = [f"# part {spec.part_id} of degree {spec.degree}", f"# engine {spec.engine}", f"# seed {seed}",
            "# degree\torder\tP|I\tM|-\tsignature\tgenerators"]
    rows = []
    for G in groups:
        sig = "-" if spec.part_id == "primitive" else f"{spec.k},{spec.top_index}"
        rows.append("\t".join([str(spec.degree), str(G.order), "P" if spec.part_id == "primitive" else "I",
                               "M" if is_minimal_transitive(G, seed) else "-", sig,
                               format_generators(G.generators)]))
    return "\n".join(head + rows) + "\n"


def _parse_part(text: str) -> list[tuple[PermGroup, bool]]:
    out = []
    for ln in text.splitlines():
        if not ln or ln.startswith("#"):
            continue
        deg, order, _, mini, _, gens = ln.split("\t")
        G = PermGroup(int(deg), parse_generators(gens, int(deg)))
        if G.order != int(order):
            raise ValueError("part file order mismatch")
        out.append((G, mini == "M"))
    return out


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class PartResult:
    spec: PartSpec
    text: str
    status: str = "done"
    groups: list = field(default_factory=list)


def compute_part(spec: PartSpec, store: CatalogueStore) -> PartResult:
    groups = [short_generators(G, store.seed) for G in run_part(spec, store)]
    text = _part_text(spec, groups, store.seed)
    return PartResult(spec, text, "done", [(G, mini) for G, mini in _parse_part(text)])


def _worker(args):
    out_dir, seed, budget, spec = args
    store = CatalogueStore(out_dir, seed=seed, budget=budget)
    return compute_part(spec, store).text


# ----------------------------------------------------------------- manifest

def read_manifest(path: Path) -> dict[str, tuple[str, str, str]]:
    out = {}
    if path.exists():
        for ln in path.read_text().splitlines():
            if ln and not ln.startswith("#"):
                pid, engine, status, digest = ln.split("\t")
                out[pid] = (engine, status, digest)
    return out


def write_manifest(path: Path, n: int, seed: int, rows: dict[str, tuple[str, str, str]], order: list[str]):
    lines = [f"# parts of degree {n}", f"# seed {seed}", "# part\tengine\tstatus\tdigest"]
    for pid in order:
        if pid in rows:
            lines.append("\t".join((pid,) + rows[pid]))
    path.write_text("\n".join(lines) + "\n")


def run_single_part(n: int, part_id: str, store: CatalogueStore) -> PartResult:
    """Compute one part and record it in the manifest (requires an output directory)."""
    if store.out_dir is None:
        raise ValueError("running single parts needs an output directory")
    specs = plan_parts(n, store)
    spec = next((s for s in specs if s.part_id == part_id), None)
    if spec is None:
        raise KeyError(f"no part {part_id!r} for degree {n}")
    res = compute_part(spec, store)
    _record(store, n, specs, [res])
    return res


def _record(store: CatalogueStore, n: int, specs: list[PartSpec], results: list[PartResult]):
    d = store.degree_dir(n)
    (d / "parts").mkdir(parents=True, exist_ok=True)
    path = d / MANIFEST_NAME
    rows = read_manifest(path)
    for r in results:
        (d / "parts" / r.spec.file_name).write_text(r.text)
        rows[r.spec.part_id] = (r.spec.engine, r.status, _digest(r.text))
    write_manifest(path, n, store.seed, rows, [s.part_id for s in specs])


def _load_done_part(store: CatalogueStore, spec: PartSpec) -> Optional[PartResult]:
    d = store.degree_dir(spec.degree)
    rows = read_manifest(d / MANIFEST_NAME)
    path = d / "parts" / spec.file_name
    if spec.part_id not in rows or not path.exists():
        return None
    engine, status, digest = rows[spec.part_id]
    text = path.read_text()
    if status != "done" or digest != _digest(text):
        return None
    return PartResult(spec, text, "done", _parse_part(text))


# ----------------------------------------------------------------- classify

def classify_degree(n: int, store: CatalogueStore, resume: bool = False) -> Catalogue:
    """Build, order and persist the catalogue of transitive groups of degree n."""
    if n < 2:
        raise ValueError("degree must be at least 2")
    specs = plan_parts(n, store)
    results: dict[str, PartResult] = {}
    if resume and store.out_dir is not None:
        for s in specs:
            r = _load_done_part(store, s)
            if r is not None:
                results[s.part_id] = r
    todo = [s for s in specs if s.part_id not in results]
    if store.workers > 1 and store.out_dir is not None and len(todo) > 1:
        args = [(store.out_dir, store.seed, store.budget, s) for s in todo]
        with ProcessPoolExecutor(max_workers=store.workers) as ex:
            for s, text in zip(todo, ex.map(_worker, args)):
                results[s.part_id] = PartResult(s, text, "done", _parse_part(text))
    else:
        for s in todo:
            log.info("degree %d part %s (%s)", n, s.part_id, s.engine)
            results[s.part_id] = compute_part(s, store)
    if store.out_dir is not None:
        _record(store, n, specs, [results[s.part_id] for s in todo])

    produced = []  # (group, minimal, signature) in production order
    for s in specs:
        sig = None if s.part_id == "primitive" else Signature(s.k, s.top_index)
        for G, mini in results[s.part_id].groups:
            produced.append((G, mini, sig))
    # groups of different parts have different signatures; this pass guards against engine slips
    unique = unique_up_to_conjugacy([G for G, _, _ in produced])
    if len(unique) != len(produced):
        log.warning("degree %d: %d duplicate groups across parts", n, len(produced) - len(unique))
        keep = {id(G) for G in unique}
        produced = [t for t in produced if id(t[0]) in keep]
    order = sorted(range(len(produced)),
                   key=lambda i: (produced[i][0].order, invariant_key(produced[i][0]).serialize(), i))
    entries = []
    for idx, i in enumerate(order, start=1):
        G, mini, sig = produced[i]
        entries.append(CatalogueEntry(n, idx, G, sig is None, mini, sig))
    cat = Catalogue(n, entries, store.seed)
    store.put(cat)
    return cat


def classify_range(degrees, store: CatalogueStore) -> dict[int, Catalogue]:
    return {n: store.get(n) for n in degrees}


# ------------------------------------------------------------- cross checks

def block2_slice(n: int, store: CatalogueStore, engine: str) -> list[PermGroup]:
    """Transitive groups of degree n with minimal block size 2, from one engine only."""
    if n % 2:
        raise ValueError("degree must be even")
    out = []
    for e in store.get(n // 2):
        raw = descend_part(2, e.group, budget=10**7) if engine == "descent" else extend_layered(2, e.group)
        out.extend(G for G in raw if minimal_block_size(G) == 2)
    return unique_up_to_conjugacy(out)


def same_classes(A: Sequence[PermGroup], B: Sequence[PermGroup]) -> bool:
    """Whether two lists of pairwise non-conjugate groups represent the same classes."""
    if len(A) != len(B):
        return False
    return all(any(are_conjugate(G, H) is not None for H in B) for G in A)


def check_primitive_part(n: int) -> bool:
    return all(is_primitive(G) for _, G in primitive_groups(n))


# ------------------------------------------------------------------ tables

@dataclass
class TableRow:
    n: int
    g: Optional[int]
    m: Optional[int]
    t: Optional[int]
    c: Optional[int]


def read_tables(path: Optional[Path] = None) -> dict[int, TableRow]:
    """Reference counts: lines ``n g m t c`` with ``-`` for unknown values."""
    if path is None:
        lines = read_checked(TABLES_FILE, DATA_DIR)
    else:
        lines = [ln for ln in Path(path).read_text().splitlines() if ln and not ln.startswith("#")]
    out = {}
    for ln in lines:
        vals = [None if v == "-" else int(v) for v in ln.split()]
        out[vals[0]] = TableRow(*vals)
    return out


def verify_tables(degrees, store: CatalogueStore, path: Optional[Path] = None,
                  graphs: bool = False) -> list[tuple[int, str, int, int]]:
    """(n, column, expected, found) for every comparison; callers count mismatches."""
    table = read_tables(path)
    rows = []
    for n in degrees:
        if n not in table:
            continue
        cat = store.get(n)
        ref = table[n]
        if ref.g is not None:
            rows.append((n, "g", ref.g, len(cat)))
        if ref.m is not None:
            rows.append((n, "m", ref.m, cat.minimal_count))
        if graphs and (ref.t is not None or ref.c is not None):
            from .graphs import transitive_graph_census
            census = transitive_graph_census(n, cat)
            if ref.t is not None:
                rows.append((n, "t", ref.t, census.t))
            if ref.c is not None:
                rows.append((n, "c", ref.c, census.c))
    return rows


def default_out_dir() -> Optional[Path]:
    v = os.environ.get("TRANSCAT_OUT")
    return Path(v) if v else None
