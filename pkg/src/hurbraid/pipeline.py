"""End-to-end census runs, the on-disk cache, table output and fixture diffs.

A run walks every selected group through: class labeling, type
enumeration, the Scott and minus-identity filters, the structure-constant
screen, and finally the orbit computation.  A type whose orbit count is
zero is not generating and produces no row.  Resource limits never drop a
type silently; such a type gets an ``unknown`` row instead.

Cache layout (see ``Cache``): one JSON container per (group, stage,
parameters), written atomically.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
import tempfile
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .affine import AffineGroup, build_affine, format_group_text, load_group_file
from .braid import arrangement_count, braid_orbits, triple_orbits
from .catalog import CATALOG, get_entry, load_catalog_group
from .classes import ClassTable, class_table, normalize_type, parse_label
from .ramification import (enumerate_types, minus_identity_filter, scott_data, scott_filter,
                           structure_constant)
from .tuples import ClassCache, ResourceCap

logger = logging.getLogger(__name__)

__all__ = [
    "RunConfig",
    "CensusRow",
    "ComponentCensus",
    "Cache",
    "run_pipeline",
    "emit_table",
    "read_census",
    "load_fixture",
    "builtin_fixture",
    "FixtureRow",
    "diff_against_fixture",
    "DiffReport",
    "default_groups",
    "resolve_group",
    "CACHE_ENV",
]

CACHE_ENV = "HURBRAID_CACHE"
CACHE_FORMAT = "hurbraid-cache"
CACHE_VERSION = 1
ENGINES = ("auto", "direct", "projection-fiber")
COLUMNS = ["degree", "group", "r", "type", "n_orbits", "max_length"]


@dataclass
class RunConfig:
    degree: int
    groups: list[str] | None = None  # catalog names or group files; None selects defaults
    genus: int = 1
    r_min: int = 3
    r_max: int | None = None
    engine: str = "auto"
    max_forms: int = 2_000_000
    max_nodes: int = 2_000_000
    quotient_forms: int = 500_000  # projection-fiber: cap on tuple classes in G/V
    sc_cap_log2: float = 34.0
    probe_budget: int = 1_000_000
    cache_dir: str | None = None
    workers: int = 1
    stretch: bool = False

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        for name in ("max_forms", "max_nodes", "quotient_forms", "sc_cap_log2", "probe_budget",
                     "workers"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.stretch:
            self.max_forms = max(self.max_forms, 200_000_000)
            self.max_nodes = max(self.max_nodes, 500_000_000)
            self.sc_cap_log2 = max(self.sc_cap_log2, 60.0)
            self.quotient_forms = max(self.quotient_forms, self.max_forms)
            self.probe_budget = max(self.probe_budget, 50_000_000)

    def orbit_params(self) -> dict:
        return {"engine": self.engine, "max_forms": self.max_forms, "max_nodes": self.max_nodes,
                "quotient_forms": self.quotient_forms, "probe_budget": self.probe_budget}


@dataclass
class CensusRow:
    degree: int
    group: str
    type: str
    r: int
    n_orbits: int | str
    max_length: int | str
    lengths: list = field(default_factory=list)
    status: str = "exact"
    engine: str = ""
    wall_time: float = 0.0

    @property
    def known(self) -> bool:
        return isinstance(self.n_orbits, int)


@dataclass
class ComponentCensus:
    degree: int
    genus: int
    groups: list[str] = field(default_factory=list)
    rows: list[CensusRow] = field(default_factory=list)
    dropped: dict = field(default_factory=dict)  # group -> {type: reason}

    def sorted_rows(self) -> list[CensusRow]:
        gidx = {g: i for i, g in enumerate(self.groups)}
        return sorted(self.rows, key=lambda w: (gidx.get(w.group, len(gidx)), w.group, w.r,
                                                _type_sort_key(w.type)))

    def group_rows(self, group: str) -> list[CensusRow]:
        return [w for w in self.sorted_rows() if w.group == group]

    def totals_by_r(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for w in self.rows:
            if w.known:
                out[w.r] += w.n_orbits
        return dict(sorted(out.items()))

    @property
    def total(self) -> int:
        return sum(self.totals_by_r().values())

    @property
    def unknown_rows(self) -> list[CensusRow]:
        return [w for w in self.rows if not w.known]

    def connectivity_exceptions(self, r_min: int = 5) -> list[CensusRow]:
        """Rows with r >= r_min and more than one orbit.

        Inner Hurwitz spaces are expected to be connected from five branch
        points on (one known exception in degree 16), so anything listed here
        deserves a second look rather than silent acceptance.
        """
        return [w for w in self.sorted_rows() if w.known and w.r >= r_min and w.n_orbits > 1]

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "genus": self.genus,
            "groups": self.groups,
            "rows": [asdict(w) for w in self.sorted_rows()],
            "totals_by_r": {str(k): v for k, v in self.totals_by_r().items()},
            "total": self.total,
            "unknown": len(self.unknown_rows),
        }


def _type_sort_key(t: str):
    return tuple(parse_label(l) for l in t.strip("()").split(",") if l)


def type_string(entries) -> str:
    return "(" + ",".join(entries) + ")"


def parse_type_string(t: str) -> tuple[str, ...]:
    return normalize_type([l.strip().upper() for l in t.strip().strip("()[]").split(",") if l.strip()])


# -- cache ----------------------------------------------------------------------

class Cache:
    """Versioned JSON containers keyed by (group hash, stage, parameters).

    Each file holds ``{"format", "version", "group", "stage", "params",
    "payload"}``.  Files with another format or version are ignored, so an
    incompatible change only needs a version bump.  Writes go to a temporary
    file in the same directory followed by an atomic rename.
    """

    def __init__(self, root: str | os.PathLike | None):
        self.root = Path(root) if root else None

    @classmethod
    def from_env(cls, root=None) -> "Cache":
        return cls(root or os.environ.get(CACHE_ENV))

    def _path(self, group_hash: str, stage: str, params: dict) -> Path:
        blob = json.dumps(params, sort_keys=True, default=str)
        key = hashlib.sha256(f"{stage}|{blob}".encode()).hexdigest()[:20]
        return self.root / group_hash / f"{stage}-{key}.json"

    def get(self, group_hash: str, stage: str, params: dict):
        if self.root is None:
            return None
        path = self._path(group_hash, stage, params)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if data.get("format") != CACHE_FORMAT or data.get("version") != CACHE_VERSION:
            return None
        if data.get("stage") != stage or data.get("group") != group_hash:
            return None
        return data["payload"]

    def put(self, group_hash: str, stage: str, params: dict, payload) -> None:
        if self.root is None:
            return
        path = self._path(group_hash, stage, params)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = {"format": CACHE_FORMAT, "version": CACHE_VERSION, "group": group_hash,
                "stage": stage, "params": params, "payload": payload}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, sort_keys=True, default=str)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise


# -- groups ---------------------------------------------------------------------

def resolve_group(ref: str) -> tuple[str, AffineGroup]:
    """A catalog name or a path to a group file."""
    if os.path.exists(ref):
        spec = load_group_file(ref)
        return spec.name, build_affine(spec)
    entry = get_entry(ref)
    return entry.name, load_catalog_group(entry.name)


def is_frobenius_case(AG: AffineGroup) -> bool:
    """True when the second derived subgroup is trivial."""
    return AG.group.derived_subgroup().derived_subgroup().order() == 1


def default_groups(degree: int) -> list[str]:
    """Matched catalog groups of a degree, minus those with G'' = 1."""
    out = []
    for name, e in CATALOG.items():
        if e.degree != degree or not e.matched:
            continue
        if is_frobenius_case(load_catalog_group(name)):
            continue
        out.append(name)
    return out


# -- pipeline -------------------------------------------------------------------

def _classes_payload(table: ClassTable) -> list:
    return [[c.label, c.order, c.centralizer_order, c.index, c.fix_count] for c in table.classes]


def _types_stage(AG, table, cfg: RunConfig) -> list[dict]:
    """Enumerated types with filter verdicts and structure constants."""
    sd = scott_data(AG, table)
    out = []
    for ty in enumerate_types(table, AG.degree, cfg.genus, cfg.r_min, cfg.r_max):
        rec = {"type": type_string(ty.entries), "r": ty.r, "status": "kept", "sc": None}
        ok, why = scott_filter(ty, sd, AG.e)
        if ok:
            ok, why = minus_identity_filter(ty, sd, AG.p, AG.e)
        if not ok:
            rec["status"] = why
        else:
            sc = structure_constant(ty, table, cap_log2=cfg.sc_cap_log2)
            rec["sc"] = sc
            if sc == 0:
                rec["status"] = "structure constant 0"
        out.append(rec)
    return out


def _translation_labels(AG, table: ClassTable) -> set[str]:
    """Nonidentity classes inside V; the quotient route cannot handle them."""
    return {c.label for c in table.classes
            if c.order > 1 and c.fix_count == 0 and AG.pi(c.rep).is_identity()}


def _choose_engine(cfg: RunConfig, entries, table: ClassTable, sc, in_v=frozenset()) -> str:
    if len(entries) == 3:
        return "triple"
    if cfg.engine != "auto":
        return cfg.engine
    if set(entries) & set(in_v):
        return "direct"
    if isinstance(sc, int):
        est = sc // table.order * arrangement_count(entries)
        if est <= cfg.max_forms:
            return "direct"
    return "projection-fiber"


def _orbit_job(group_ref: str, entries: tuple, engine: str, cfg: RunConfig) -> dict:
    """Orbit computation for one type; resource failures give an unknown result."""
    from .fiber import ProjectionFiber, projection_fiber_census

    t0 = time.time()
    _, AG = resolve_group(group_ref)
    table = _table_for(group_ref, AG)
    res = {"engine": engine}
    try:
        if engine == "triple":
            c = triple_orbits(entries, table, _cache_for(group_ref, table))
        elif engine == "direct":
            c = braid_orbits(entries, table, cache=_cache_for(group_ref, table),
                             max_forms=cfg.max_forms, max_nodes=cfg.max_nodes)
        else:
            pf = _pf_for(group_ref, AG, table, ProjectionFiber)
            c, _, _ = projection_fiber_census(AG, entries, pf, budget=cfg.probe_budget,
                                              max_forms=cfg.quotient_forms,
                                              max_nodes=cfg.max_nodes)
        if not c.complete:
            res.update(status=f"unknown: {c.note}", n_orbits="unknown", lengths=[])
        else:
            res.update(status="exact" if c.certified else "uncertified", n_orbits=c.count,
                       lengths=c.lengths)
    except (ResourceCap, MemoryError) as exc:
        res.update(status=f"unknown: {exc}", n_orbits="unknown", lengths=[])
    except ValueError as exc:  # e.g. a translation class has no image in the quotient
        res.update(status=f"unknown: {exc}", n_orbits="unknown", lengths=[])
    res["wall_time"] = round(time.time() - t0, 3)
    return res


_TABLES: dict = {}


def _table_for(ref, AG):
    key = (ref, "G")
    if key not in _TABLES:
        _TABLES[key] = class_table(AG)
    return _TABLES[key]


def _cache_for(ref, table):
    key = (ref, "cache")
    if key not in _TABLES:
        _TABLES[key] = ClassCache(table)
    return _TABLES[key]


def _pf_for(ref, AG, table, cls):
    key = (ref, "pf")
    if key not in _TABLES:
        _TABLES[key] = cls(AG, table)
    return _TABLES[key]


def run_pipeline(cfg: RunConfig, progress=None) -> ComponentCensus:
    """Run every stage for the configured groups and collect the census."""
    refs = cfg.groups or default_groups(cfg.degree)
    cache = Cache.from_env(cfg.cache_dir)
    census = ComponentCensus(cfg.degree, cfg.genus)
    say = progress or (lambda msg: logger.info(msg))
    for ref in refs:
        name, AG = resolve_group(ref)
        if AG.degree != cfg.degree:
            raise ValueError(f"{name} has degree {AG.degree}, not {cfg.degree}")
        census.groups.append(name)
        gh = AG.spec.content_hash()
        table = _table_for(ref, AG)
        labels = _classes_payload(table)
        cached = cache.get(gh, "classes", {})
        if cached is not None and cached != labels:
            # later stages key on the labels, so stale entries are simply not found
            logger.warning("%s: class labels changed since the cached run", name)
        cache.put(gh, "classes", {}, labels)
        tparams = {"genus": cfg.genus, "r_min": cfg.r_min, "r_max": cfg.r_max,
                   "sc_cap_log2": cfg.sc_cap_log2, "labels": labels}
        types = cache.get(gh, "types", tparams)
        if types is None:
            types = _types_stage(AG, table, cfg)
            cache.put(gh, "types", tparams, types)
        census.dropped[name] = {t["type"]: t["status"] for t in types if t["status"] != "kept"}
        kept = [t for t in types if t["status"] == "kept"]
        say(f"{name}: {len(types)} types, {len(kept)} survive the filters")
        jobs = []
        results: dict[str, dict] = {}
        in_v = _translation_labels(AG, table)
        for t in kept:
            entries = parse_type_string(t["type"])
            engine = _choose_engine(cfg, entries, table, t["sc"], in_v)
            oparams = dict(cfg.orbit_params(), type=t["type"], engine=engine, labels=labels)
            hit = cache.get(gh, "orbits", oparams)
            if hit is not None:
                results[t["type"]] = hit
            else:
                jobs.append((t, entries, engine, oparams))
        if cfg.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
                futs = [(j, pool.submit(_orbit_job, ref, j[1], j[2], cfg)) for j in jobs]
                done = [(j, f.result()) for j, f in futs]
        else:
            done = []
            for k, j in enumerate(jobs, 1):
                logger.debug("%s: job %d/%d %s via %s", name, k, len(jobs), j[0]["type"], j[2])
                done.append((j, _orbit_job(ref, j[1], j[2], cfg)))
        for (t, entries, engine, oparams), res in done:
            cache.put(gh, "orbits", oparams, res)
            results[t["type"]] = res
        for t in kept:
            res = results[t["type"]]
            if res["n_orbits"] == 0:
                census.dropped[name][t["type"]] = "no generating tuples"
                continue
            lengths = res["lengths"]
            census.rows.append(CensusRow(
                cfg.degree, name, t["type"], t["r"], res["n_orbits"],
                max(lengths) if lengths else "unknown", lengths, res["status"], res["engine"],
                res.get("wall_time", 0.0)))
            say(f"  {t['type']}: {res['n_orbits']} orbit(s) {lengths} [{res['status']}]")
    return census


# -- output ---------------------------------------------------------------------

def emit_table(census: ComponentCensus, fmt: str = "csv", path=None) -> str:
    """Render the census; rows sorted by group, r and type.  Writes ``path`` if given."""
    rows = census.sorted_rows()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in rows:
            w.writerow([row.degree, row.group, row.r, row.type, row.n_orbits, row.max_length])
        text = buf.getvalue()
    elif fmt == "json":
        text = json.dumps(_stable_dict(census), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    elif fmt in ("md", "markdown"):
        lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
        for row in rows:
            vals = [row.degree, row.group, row.r, row.type, row.n_orbits, row.max_length]
            lines.append("| " + " | ".join(str(v) for v in vals) + " |")
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _stable_dict(census: ComponentCensus) -> dict:
    d = census.to_dict()
    for row in d["rows"]:
        row.pop("wall_time", None)  # keeps the file byte-stable across runs
    return d


def read_census(path) -> ComponentCensus:
    """Load a census written by `emit_table` in csv or json form."""
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        d = json.loads(text)
        census = ComponentCensus(d["degree"], d["genus"], list(d["groups"]))
        for row in d["rows"]:
            census.rows.append(CensusRow(**{k: v for k, v in row.items()
                                            if k in CensusRow.__dataclass_fields__}))
        return census
    rd = csv.DictReader(io.StringIO(text))
    if rd.fieldnames != COLUMNS:
        raise ValueError(f"{path}: expected columns {COLUMNS}")
    census = None
    for rec in rd:
        deg = int(rec["degree"])
        census = census or ComponentCensus(deg, -1)
        if rec["group"] not in census.groups:
            census.groups.append(rec["group"])
        census.rows.append(CensusRow(deg, rec["group"], rec["type"], int(rec["r"]),
                                     _int_or_str(rec["n_orbits"]), _int_or_str(rec["max_length"])))
    return census or ComponentCensus(0, -1)


def _int_or_str(s):
    try:
        return int(s)
    except ValueError:
        return s


# -- fixtures and diffs -----------------------------------------------------------

@dataclass
class FixtureRow:
    degree: int
    group: str
    type: str
    n_orbits: int
    max_length: int
    flags: tuple = ()
    source: str = ""


def builtin_fixture(degree: int) -> Path:
    return Path(str(resources.files("hurbraid") / "fixtures" / f"degree{degree}.csv"))


def load_fixture(path) -> list[FixtureRow]:
    """Read a fixture CSV; lines starting with '#' are comments."""
    text = Path(path).read_text(encoding="utf-8")
    body = "\n".join(l for l in text.splitlines() if not l.startswith("#"))
    rd = csv.DictReader(io.StringIO(body))
    need = {"degree", "group", "type", "n_orbits", "max_length"}
    if not rd.fieldnames or not need <= set(rd.fieldnames):
        raise ValueError(f"{path}: malformed fixture, columns {rd.fieldnames}")
    out = []
    for k, rec in enumerate(rd, start=1):
        try:
            out.append(FixtureRow(int(rec["degree"]), rec["group"], rec["type"],
                                  int(rec["n_orbits"]), int(rec["max_length"]),
                                  tuple(f for f in (rec.get("flags") or "").split(";") if f),
                                  rec.get("source") or ""))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"{path}: malformed fixture row {k}: {exc}") from None
    return out


SKIP_FLAGS = ("conflict", "no-catalog-group", "unmatched-catalog-group", "rh-invalid")


@dataclass
class DiffEntry:
    group: str
    type: str
    status: str  # match, mismatch, missing, extra
    expected: tuple | None = None
    got: tuple | None = None
    note: str = ""


@dataclass
class DiffReport:
    entries: list[DiffEntry] = field(default_factory=list)
    relabelings: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(e.status == status for e in self.entries)

    @property
    def ok(self) -> bool:
        return all(e.status == "match" for e in self.entries)

    def format_text(self) -> str:
        lines = []
        for g, m in self.relabelings.items():
            moved = ", ".join(f"{a}->{b}" for a, b in sorted(m.items()) if a != b)
            lines.append(f"relabel {g}: {moved}")
        for e in self.entries:
            if e.status == "match" and not e.note:
                continue
            exp = "-" if e.expected is None else f"{e.expected[0]}/{e.expected[1]}"
            got = "-" if e.got is None else f"{e.got[0]}/{e.got[1]}"
            lines.append(f"{e.status:9s} {e.group} {e.type} expected {exp} got {got}"
                         + (f" ({e.note})" if e.note else ""))
        for s in self.skipped:
            lines.append(f"skipped   {s}")
        lines.append(f"match {self.count('match')}, mismatch {self.count('mismatch')}, "
                     f"missing {self.count('missing')}, extra {self.count('extra')}")
        return "\n".join(lines)


def _invariant_key(table: ClassTable, t: tuple) -> tuple:
    sig = []
    for l in t:
        c = table[table.position(l)]
        sig.append((c.order, c.centralizer_order, c.index, c.fix_count))
    return tuple(sorted(sig))


def diff_against_fixture(census: ComponentCensus, fixture: list[FixtureRow],
                         tables: dict[str, ClassTable] | None = None,
                         relabel: bool = True) -> DiffReport:
    """Row-by-row comparison of a census with a fixture.

    Only fixture groups that appear in ``census.groups`` are compared.  For
    each group the fixture labels may be renamed by one label symmetry of
    our class table (invariants and power maps preserved); the symmetry
    with the most exact matches is used and reported.  Rows flagged
    label-ambiguous that still disagree are then compared on label-invariant
    data: inside each bucket of equal class invariants the multisets of
    (orbit count, largest length) must agree.
    """
    tables = dict(tables or {})
    report = DiffReport()
    by_group = defaultdict(list)
    for fr in fixture:
        if fr.group not in census.groups:
            continue
        skip = [f for f in fr.flags if f in SKIP_FLAGS]
        if skip:
            report.skipped.append(f"{fr.group} {fr.type} [{','.join(skip)}] {fr.source}")
            continue
        by_group[fr.group].append(fr)
    for g in census.groups:
        got = {parse_type_string(w.type): (w.n_orbits, w.max_length) for w in census.rows
               if w.group == g}
        exp_rows = by_group.get(g, [])
        table = tables.get(g)
        if table is None and relabel and g in CATALOG:
            table = tables[g] = class_table(load_catalog_group(g))
        maps = table.label_symmetries() if (table is not None and relabel) else [None]

        def mapped(fr, m):
            labels = [l.strip().upper() for l in fr.type.strip("()").split(",")]
            return normalize_type([m[l] for l in labels] if m else labels)

        best, best_score = maps[0], -1
        for m in maps:
            try:
                score = sum(got.get(mapped(fr, m)) == (fr.n_orbits, fr.max_length)
                            for fr in exp_rows)
            except KeyError:
                continue
            if score > best_score:
                best, best_score = m, score
        if best and any(a != b for a, b in best.items()):
            report.relabelings[g] = best
        seen = set()
        pending_exp, pending_got = [], []
        for fr in exp_rows:
            t = mapped(fr, best)
            want = (fr.n_orbits, fr.max_length)
            seen.add(t)
            if t not in got:
                e = DiffEntry(g, type_string(t), "missing", want, None, fr.source)
            elif got[t] == want:
                e = DiffEntry(g, type_string(t), "match", want, got[t])
            else:
                e = DiffEntry(g, type_string(t), "mismatch", want, got[t], fr.source)
            if e.status != "match" and "label-ambiguous" in fr.flags:
                pending_exp.append(e)
            report.entries.append(e)
        for t, val in sorted(got.items(), key=lambda kv: _type_sort_key(type_string(kv[0]))):
            if t not in seen:
                e = DiffEntry(g, type_string(t), "extra", None, val)
                report.entries.append(e)
                pending_got.append(e)
        if table is not None and pending_exp:
            _invariant_fallback(table, pending_exp, pending_got)
    return report


def _invariant_fallback(table, pending_exp, pending_got):
    """Accept label-ambiguous rows whose invariant buckets agree as multisets."""
    bucket_exp = defaultdict(list)
    bucket_got = defaultdict(list)
    for e in pending_exp:
        bucket_exp[_invariant_key(table, parse_type_string(e.type))].append(e)
    for e in pending_got:
        bucket_got[_invariant_key(table, parse_type_string(e.type))].append(e)
    for key, es in bucket_exp.items():
        gs = bucket_got.get(key, [])
        exp_vals = Counter(e.expected for e in es)
        got_vals = Counter(e.got for e in es if e.status == "mismatch")
        got_vals.update(e.got for e in gs)
        n_extra = len(gs)
        if exp_vals == got_vals and sum(e.status == "missing" for e in es) == n_extra:
            for e in es + gs:
                e.status = "match"
                e.note = "label-invariant comparison"
