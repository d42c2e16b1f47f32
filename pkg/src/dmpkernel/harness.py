"""Instance generators and seeded verification campaigns.

Each suite re-checks one claim on many generated instances and returns a
``RunReport``. Failing instances are stored as reproducers (Newick trees plus
character CSV) so they can be replayed without the generator.
"""
from __future__ import annotations

import itertools
import json
import math
import os
import random
import re
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .bounds import approximate_dmp
from .core import (
    PhyloTree,
    Taxon,
    all_trees,
    are_spanning_disjoint,
    caterpillar,
    induced_subtree,
    random_tbr_move,
    random_tree,
    set_degree,
    trees_equal,
)
from .errors import BadSpec, PhyloError, UnknownSuite
from .kernel import (
    DEFAULT_PARAMS,
    alpha_tables,
    build_partition,
    build_quartet_character,
    degree_excess_count,
    irreducible_bound_check,
    kernel_witness,
)
from .newick import parse_newick, write_newick
from .oracle import ALPHA, brute_parsimony, check_tree_decomposition, display_graph, exact_dmp, exact_dtbr, exact_treewidth
from .parsimony import Character, character_distance, ps, ps_lower_bound_check
from .reduction import is_irreducible, lift_character, reduce

DEFAULT_SEED = 20180723
SEED_ENV = "DMPKERNEL_SEED"


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    return int(raw) if raw else DEFAULT_SEED


def taxon_names(n: int, prefix: str = "x") -> list[Taxon]:
    width = len(str(max(n, 1)))
    return [f"{prefix}{i:0{width}d}" for i in range(1, n + 1)]


# -- instance generation -------------------------------------------------------
GENERATORS = ("random", "tbr-walk", "glued-quartets", "caterpillar-variant")


@dataclass(frozen=True)
class InstanceSpec:
    """``k`` is the number of TBR moves for tbr-walk and of gadgets for glued-quartets."""

    n: int
    generator: str = "random"
    seed: int = DEFAULT_SEED
    k: int = 1


def _joined(items: list[str]) -> str:
    acc = items[0]
    for item in items[1:]:
        acc = f"({acc},{item})"
    return acc + ";"


def glued_quartets(k: int, n: int, seed: int) -> tuple[PhyloTree, PhyloTree, list[frozenset[Taxon]]]:
    """k four-leaf gadgets, ab|cd in T1 and ac|bd in T2, hung with n - 4k
    spacer leaves on a shared caterpillar backbone in the same order."""
    if k < 1 or n < 4 * k:
        raise BadSpec(f"glued-quartets needs k >= 1 and n >= 4k, got k={k}, n={n}")
    rng = random.Random(seed)
    width = len(str(k))
    quartets = []
    items1, items2 = [], []
    for i in range(1, k + 1):
        a, b, c, d = (f"q{i:0{width}d}{s}" for s in "abcd")
        quartets.append(frozenset((a, b, c, d)))
        items1.append(f"(({a},{b}),({c},{d}))")
        items2.append(f"(({a},{c}),({b},{d}))")
    spacers = taxon_names(n - 4 * k, "s")
    order = list(range(k + len(spacers)))
    rng.shuffle(order)

    def item(j: int, gadgets: list[str]) -> str:
        return gadgets[j] if j < k else spacers[j - k]

    t1 = parse_newick(_joined([item(j, items1) for j in order]))
    t2 = parse_newick(_joined([item(j, items2) for j in order]))
    return t1, t2, quartets


def generate_instance(spec: InstanceSpec) -> tuple[PhyloTree, PhyloTree]:
    """Deterministic tree pair for ``spec``."""
    if spec.generator not in GENERATORS:
        raise BadSpec(f"unknown generator {spec.generator!r}; choose from {', '.join(GENERATORS)}")
    if spec.n < 1:
        raise BadSpec("n must be positive")
    rng = random.Random(spec.seed)
    taxa = taxon_names(spec.n)
    if spec.generator == "random":
        return random_tree(taxa, rng.randrange(2**32)), random_tree(taxa, rng.randrange(2**32))
    if spec.generator == "tbr-walk":
        if spec.n < 4 or spec.k < 0:
            raise BadSpec("tbr-walk needs n >= 4 and k >= 0")
        t1 = random_tree(taxa, rng.randrange(2**32))
        t2 = t1
        for _ in range(spec.k):
            t2 = random_tbr_move(t2, rng.randrange(2**32))
        return t1, t2
    if spec.generator == "glued-quartets":
        t1, t2, _ = glued_quartets(spec.k, spec.n, rng.randrange(2**32))
        return t1, t2
    if spec.n < 4:
        raise BadSpec("caterpillar-variant needs n >= 4")
    t1 = caterpillar(taxa)
    i, j = sorted(rng.sample(range(spec.n), 2))
    swapped = list(taxa)
    swapped[i], swapped[j] = swapped[j], swapped[i]
    return t1, caterpillar(swapped)


def _rooted_random(taxa: list[Taxon], rng: random.Random) -> str:
    items = list(taxa)
    while len(items) > 1:
        i, j = sorted(rng.sample(range(len(items)), 2))
        b = items.pop(j)
        a = items.pop(i)
        items.append(f"({a},{b})")
    return items[0]


def reducible_pair(n: int, kind: str, seed: int) -> tuple[PhyloTree, PhyloTree]:
    """A pair on n taxa with a common cherry or a common chain built in.

    ``cherry``: grow one leaf of a random pair into a cherry in both trees.
    ``chain``: join two random rooted trees by a path carrying at least 5
    leaves in the same order in both trees. When n >= 9 the end clades have
    at least two taxa each and swap one taxon between trees, which usually
    leaves the chain as the only reducible structure.
    """
    rng = random.Random(seed)
    taxa = taxon_names(n)
    if kind == "cherry":
        if n < 5:
            raise BadSpec("cherry pairs need n >= 5")
        base = taxa[:-1]
        x = rng.choice(base)
        pat = re.compile(rf"(?<=[(,]){re.escape(x)}(?=[,)])")
        out = []
        for _ in range(2):
            text = write_newick(random_tree(base, rng.randrange(2**32)))
            out.append(parse_newick(pat.sub(f"({x},{taxa[-1]})", text)))
        return out[0], out[1]
    if kind == "chain":
        if n < 7:
            raise BadSpec("chain pairs need n >= 7")
        swap = n >= 9
        r = rng.randint(5, n - 4 if swap else n - 2)
        shuffled = list(taxa)
        rng.shuffle(shuffled)
        chain, rest = shuffled[:r], shuffled[r:]
        cut = rng.randint(2, len(rest) - 2) if swap else rng.randint(1, len(rest) - 1)
        out = []
        for i in range(2):
            side_a, side_b = rest[:cut], rest[cut:]
            if swap and i == 1:
                side_a, side_b = side_a[1:] + side_b[:1], side_a[:1] + side_b[1:]
            inner = _rooted_random(side_b, rng)
            for y in reversed(chain):
                inner = f"({y},{inner})"
            out.append(parse_newick(f"({_rooted_random(side_a, rng)},{inner});"))
        return out[0], out[1]
    raise BadSpec(f"unknown reducible kind {kind!r}")


def random_character(taxa: Iterable[Taxon], max_states: int, rng: random.Random) -> Character:
    t = rng.randint(1, max_states)
    return Character({x: rng.randrange(t) for x in sorted(taxa)})


def random_spanning_disjoint_partition(tree: PhyloTree, rng: random.Random, cut_prob: float) -> list[frozenset[Taxon]]:
    """Leaf sets of the components left after deleting random edges."""
    kept = {v: [] for v in tree.vertices}
    for u, v in tree.edges:
        if rng.random() >= cut_prob:
            kept[u].append(v)
            kept[v].append(u)
    seen: set[int] = set()
    blocks = []
    for s in sorted(tree.vertices):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in kept[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        block = frozenset(tree.taxon(v) for v in comp if tree.is_leaf(v))
        if block:
            blocks.append(block)
    return blocks  # type: ignore[return-value]


# -- reports -----------------------------------------------------------------------
@dataclass
class RunReport:
    command: str
    seed: int
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    timing: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, what: str, **reproducer) -> None:
        self.failures.append({"check": what, **reproducer})

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=str)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        stats = ", ".join(f"{k}={v}" for k, v in self.outputs.items() if not isinstance(v, (dict, list)))
        return f"{status} {self.command} ({self.timing:.2f}s) {stats}"


def _pair(t1: PhyloTree, t2: PhyloTree, **extra) -> dict:
    out = {"t1": write_newick(t1), "t2": write_newick(t2)}
    for key, val in extra.items():
        out[key] = val.to_csv() if isinstance(val, Character) else val
    return out


@dataclass(frozen=True)
class SuiteConfig:
    """``scale`` multiplies every sample count (kept at least 1)."""

    seed: int = field(default_factory=default_seed)
    scale: float = 1.0
    exhaustive_n: int = 6

    def count(self, base: int) -> int:
        return max(1, round(base * self.scale))


# -- suites ------------------------------------------------------------------------
EXPECTED_ALPHA = [
    [None, 952, 774, 832, 854, 840, 948, 1056],
    [1020, 602, 624, 610, 700, 790, 704, 776],
    [860, 624, 610, 560, 632, 704, 776, 848],
    [936, 610, 700, 632, 704, 776, 848, 920],
    [976, 700, 632, 704, 776, 848, 690, 744],
    [980, 790, 704, 776, 848, 690, 744, 798],
    [1106, 880, 776, 848, 920, 744, 798, 852],
    [1232, 970, 848, 920, 744, 798, 852, 906],
]
EXPECTED_T = [
    [None, 14, 9, 8, 7, 6, 6, 6],
    [15, 7, 6, 5, 5, 5, 4, 4],
    [10, 6, 5, 4, 4, 4, 4, 4],
    [9, 5, 5, 4, 4, 4, 4, 4],
    [8, 5, 4, 4, 4, 4, 3, 3],
    [7, 5, 4, 4, 4, 3, 3, 3],
    [7, 5, 4, 4, 4, 3, 3, 3],
    [7, 5, 4, 4, 3, 3, 3, 3],
]
EXPECTED_C = [[None if (d1, d2) == (2, 2) else 9 * (d1 + d2) - 11 for d2 in range(2, 10)] for d1 in range(2, 10)]


def _suite_alpha(cfg: SuiteConfig, rep: RunReport) -> None:
    got = alpha_tables(2, 9)
    for key, want in (("c", EXPECTED_C), ("t_factor", EXPECTED_T), ("alpha", EXPECTED_ALPHA)):
        for i, (row_got, row_want) in enumerate(zip(got[key], want)):
            if row_got != row_want:
                rep.fail(f"{key} table row d1={i + 2}", got=row_got, expected=row_want)
    cells = [(v, d1, d2) for d1, row in zip(range(2, 10), got["alpha"]) for d2, v in zip(range(2, 10), row) if v]
    best = min(cells)
    rep.outputs.update(cells=len(cells), min_alpha=best[0], argmin=f"({best[1]},{best[2]})")
    if best != (560, 4, 5):
        rep.fail("minimum alpha", got=best)


def _suite_fitch(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:fitch")
    count = cfg.count(500)
    for _ in range(count):
        n = rng.randint(1, 8)
        tree = random_tree(taxon_names(n), rng.randrange(2**32))
        chi = random_character(tree.taxa, 4, rng)
        a, b = ps(tree, chi), brute_parsimony(tree, chi)
        if a != b:
            rep.fail("fitch == brute force", fitch=a, brute=b, tree=write_newick(tree), chi=chi.to_csv())
    rep.outputs["instances"] = count


def _suite_ps_bound(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:ps-bound")
    count = cfg.count(300)
    tight = 0
    for i in range(count):
        n = rng.randint(2, 14)
        tree = random_tree(taxon_names(n), rng.randrange(2**32))
        if i % 2:
            # half of the characters come from spanning-disjoint partitions so both sides occur
            chi = Character.from_blocks(random_spanning_disjoint_partition(tree, rng, rng.random()))
        else:
            chi = random_character(tree.taxa, 5, rng)
        lower, iff = ps_lower_bound_check(tree, chi)
        tight += ps(tree, chi) == chi.num_states - 1
        if not (lower and iff):
            rep.fail("PS >= t-1 with equality iff spanning-disjoint", tree=write_newick(tree), chi=chi.to_csv())
    rep.outputs.update(instances=count, tight=tight)


def _suite_metric(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:metric")
    count = cfg.count(100)
    for _ in range(count):
        n = rng.randint(3, 6)
        taxa = taxon_names(n)
        pool = list(all_trees(taxa))
        # bias towards repeated trees so the identity axiom is exercised
        trees = [rng.choice(pool[: rng.randint(1, len(pool))]) for _ in range(3)]
        d = {}
        for i, j in itertools.permutations(range(3), 2):
            d[i, j] = exact_dmp(trees[i], trees[j])[0]
        for i, j in itertools.permutations(range(3), 2):
            if d[i, j] != d[j, i]:
                rep.fail("symmetry", **_pair(trees[i], trees[j]))
            if (d[i, j] == 0) != trees_equal(trees[i], trees[j]):
                rep.fail("zero iff equal", **_pair(trees[i], trees[j]))
        for i, j, m in itertools.permutations(range(3)):
            if d[i, j] > d[i, m] + d[m, j]:
                rep.fail("triangle inequality", t1=write_newick(trees[i]), t2=write_newick(trees[j]), t3=write_newick(trees[m]))
        if exact_dmp(trees[0], trees[0])[0] != 0:
            rep.fail("d(T, T) = 0", t1=write_newick(trees[0]))
    rep.outputs["triples"] = count


def _reducible_pairs(rng: random.Random, count: int, n_lo: int, n_hi: int):
    for i in range(count):
        kind = "chain" if i % 2 and n_hi >= 7 else "cherry"
        floor = (9 if n_hi >= 9 else 7) if kind == "chain" else 5
        n = rng.randint(max(n_lo, floor), n_hi)
        yield reducible_pair(n, kind, rng.randrange(2**32))


def _suite_reduction(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:reduction")
    n_dmp, n_tbr = cfg.count(100), cfg.count(50)
    kinds: dict[str, int] = {}
    for t1, t2 in _reducible_pairs(rng, n_dmp, 5, 10):
        r1, r2, trace = reduce(t1, t2)
        for s in trace.steps:
            kinds[s.kind] = kinds.get(s.kind, 0) + 1
        if not trace.steps:
            rep.fail("constructed pair is reducible", **_pair(t1, t2))
        if exact_dmp(t1, t2)[0] != exact_dmp(r1, r2)[0]:
            rep.fail("d_MP preserved", **_pair(t1, t2))
    for t1, t2 in _reducible_pairs(rng, n_tbr, 5, 7):
        r1, r2, _ = reduce(t1, t2)
        if exact_dtbr(t1, t2)[0] != exact_dtbr(r1, r2)[0]:
            rep.fail("d_TBR preserved", **_pair(t1, t2))
    rep.outputs.update(dmp_pairs=n_dmp, tbr_pairs=n_tbr, **{f"{k}_steps": v for k, v in sorted(kinds.items())})


def _suite_lifting(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:lifting")
    count = cfg.count(200)
    for t1, t2 in _reducible_pairs(rng, count, 5, 14):
        r1, r2, trace = reduce(t1, t2)
        chi_r = random_character(r1.taxa, 4, rng)
        chi = lift_character(trace, chi_r)
        if chi.taxa != t1.taxa:
            rep.fail("lifted character covers the original taxa", **_pair(t1, t2, chi=chi_r))
        elif character_distance(t1, t2, chi) < character_distance(r1, r2, chi_r):
            rep.fail("lifting does not lower the distance", **_pair(t1, t2, chi=chi_r))
    rep.outputs["pairs"] = count


def _suite_glued(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:glued")
    per_k = cfg.count(5)
    for k in (1, 2, 3, 5):
        for _ in range(per_k):
            n = 4 * k + rng.randint(0, 6)
            t1, t2, quartets = glued_quartets(k, n, rng.randrange(2**32))
            chi = build_quartet_character(t1, t2, quartets)
            p1, p2 = ps(t1, chi), ps(t2, chi)
            rep.certificates.append({"k": k, "n": n, "ps_t1": p1, "ps_t2": p2})
            if not (p1 <= k and p2 >= 2 * k and chi.num_states <= 2):
                rep.fail(f"PS(T1) <= {k} and PS(T2) >= {2 * k}", **_pair(t1, t2, chi=chi))
    rep.outputs["instances"] = 4 * per_k


def _suite_partition(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:partition")
    count = cfg.count(100)
    for _ in range(count):
        n = rng.randint(4, 80)
        c = rng.randint(1, max(1, n // 4))
        t = rng.randint(1, max(1, n // (2 * c)))
        tree = random_tree(taxon_names(n), rng.randrange(2**32))
        p = build_partition(tree, c, t)
        blocks = list(p)
        ok = (
            len(blocks) == t
            and all(len(b) >= c for b in blocks)
            and all(len(b) < 2 * c for b in blocks[:-1])
            and frozenset().union(*blocks) == tree.taxa
            and are_spanning_disjoint(tree, blocks)
        )
        if not ok:
            rep.fail("t blocks of size >= c, spanning-disjoint", tree=write_newick(tree), c=c, t=t)
    rep.outputs["runs"] = count


def _suite_degrees(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:degrees")
    count = cfg.count(200)
    worst = 0.0
    for _ in range(count):
        tree = random_tree(taxon_names(rng.randint(4, 60)), rng.randrange(2**32))
        blocks = random_spanning_disjoint_partition(tree, rng, rng.uniform(0.05, 0.6))
        t = len(blocks)
        for d in (2, 3, 4, 5):
            try:
                got = degree_excess_count(tree, blocks, d)
            except PhyloError as exc:
                rep.fail(f"degree excess d={d}", tree=write_newick(tree), blocks=[sorted(b) for b in blocks], error=str(exc))
                continue
            if got > t // d:
                rep.fail(f"degree excess d={d}", tree=write_newick(tree), blocks=[sorted(b) for b in blocks])
            if t > 1:
                worst = max(worst, got * d / t)
    rep.outputs.update(partitions=count, max_count_times_d_over_t=round(worst, 3))


def _suite_kernel(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:kernel")
    count = cfg.count(10)
    for _ in range(count):
        t1, t2 = generate_instance(InstanceSpec(1200, "random", rng.randrange(2**32)))
        start = time.perf_counter()
        r1, r2, _ = reduce(t1, t2)
        k = r1.n // ALPHA
        chi = kernel_witness(r1, r2, k, DEFAULT_PARAMS)
        p1, p2 = ps(r1, chi), ps(r2, chi)
        rep.certificates.append(
            {"kernel_size": r1.n, "k": k, "ps_t1": p1, "ps_t2": p2, "distance": abs(p1 - p2), "seconds": round(time.perf_counter() - start, 2)}
        )
        if k < 1 or abs(p1 - p2) < k:
            rep.fail("kernel witness distance >= k", **_pair(r1, r2, chi=chi))
    rep.outputs.update(pairs=count, min_k=min(c["k"] for c in rep.certificates))


def _suite_approx(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:approx")
    count = cfg.count(200)
    done = equal = 0
    while done < count:
        t1, t2 = generate_instance(InstanceSpec(rng.randint(4, 9), "random", rng.randrange(2**32)))
        if trees_equal(t1, t2):
            continue
        done += 1
        res = approximate_dmp(t1, t2, r=1)
        truth = exact_dmp(t1, t2)[0]
        equal += truth == res.achieved
        if truth > 2 * ALPHA * res.achieved or res.achieved != character_distance(t1, t2, res.chi):
            rep.fail("d_MP <= 1120 * achieved", **_pair(t1, t2, chi=res.chi))
    rep.outputs.update(pairs=count, exact_matches=equal)


def _suite_ratio_tw(cfg: SuiteConfig, rep: RunReport) -> None:
    min_ratio = math.inf
    min_pair = None
    counts = {}
    for n in range(3, cfg.exhaustive_n + 1):
        trees = list(all_trees(taxon_names(n)))
        pairs = 0
        for t1, t2 in itertools.combinations(trees, 2):
            pairs += 1
            dmp, chi = exact_dmp(t1, t2)
            dtbr, forest = exact_dtbr(t1, t2)
            g = display_graph(t1, t2)
            tw, td = exact_treewidth(g)
            try:
                check_tree_decomposition(g.adj, td)
            except AssertionError as exc:
                rep.fail("tree decomposition axioms", **_pair(t1, t2), error=str(exc))
            if not (dmp >= 1 and 1 <= dtbr / dmp <= 2 * ALPHA):
                rep.fail("1 <= d_TBR/d_MP <= 1120", **_pair(t1, t2, chi=chi))
            if not (tw <= dtbr + 2 <= 2 * ALPHA * dmp + 2):
                rep.fail("tw <= d_TBR + 2 <= 1120 d_MP + 2", **_pair(t1, t2), tw=tw, dtbr=dtbr, dmp=dmp)
            if dmp / dtbr < min_ratio:
                min_ratio = dmp / dtbr
                min_pair = _pair(t1, t2, chi=chi, forest=[sorted(b) for b in forest.blocks], dmp=dmp, dtbr=dtbr)
        counts[f"pairs_n{n}"] = pairs
    rep.outputs.update(counts, min_dmp_over_dtbr=min_ratio)
    if min_pair is not None:
        rep.certificates.append({"min_ratio_pair": min_pair})


def _suite_small_degree(cfg: SuiteConfig, rep: RunReport) -> None:
    rng = random.Random(f"{cfg.seed}:small-degree")
    count = cfg.count(10_000)
    per_pair = 50
    largest = 0
    samples = 0
    while samples < count:
        t1, t2 = generate_instance(InstanceSpec(rng.randint(8, 30), "random", rng.randrange(2**32)))
        r1, r2, _ = reduce(t1, t2)
        if r1.n <= 4 or not is_irreducible(r1, r2):
            continue
        taxa = sorted(r1.taxa)
        for _ in range(min(per_pair, count - samples)):
            samples += 1
            order = rng.sample(taxa, len(taxa))
            s = order[:3]
            for x in order[3:]:
                trial = s + [x]
                if trees_equal(induced_subtree(r1, trial), induced_subtree(r2, trial)):
                    s = trial
            d1, d2 = set_degree(r1, s), set_degree(r2, s)
            largest = max(largest, len(s))
            if not irreducible_bound_check(r1, r2, s, d1, d2):
                rep.fail("|S| <= 9(d1+d2) - 12", **_pair(r1, r2), subset=sorted(s))
    rep.outputs.update(samples=samples, largest_agreeing_subset=largest)


SUITES: dict[str, tuple[str, Callable[[SuiteConfig, RunReport], None]]] = {
    "alpha-tables": ("c, t' and alpha tables for d1, d2 in [2, 9]", _suite_alpha),
    "fitch-vs-brute": ("Fitch equals brute-force parsimony", _suite_fitch),
    "ps-lower-bound": ("PS >= t-1, tight iff classes spanning-disjoint", _suite_ps_bound),
    "metric-axioms": ("d_MP is a metric on small trees", _suite_metric),
    "reduction-invariance": ("reduction keeps d_MP and d_TBR", _suite_reduction),
    "lifting": ("lifted characters keep their distance", _suite_lifting),
    "glued-quartets": ("quartet character: PS(T1) <= k, PS(T2) >= 2k", _suite_glued),
    "big-partition": ("partition postconditions hold", _suite_partition),
    "tree-degrees": ("blocks of degree > d number at most t/d", _suite_degrees),
    "kernel-witness": ("end-to-end witness on 1200-taxon pairs", _suite_kernel),
    "approximation": ("approximation guarantee on small pairs", _suite_approx),
    "ratio-treewidth": ("d_TBR/d_MP and treewidth bounds, exhaustive", _suite_ratio_tw),
    "small-degree-bound": ("agreeing low-degree subsets stay small", _suite_small_degree),
}


def run_suite(name: str, config: SuiteConfig | None = None) -> RunReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = config or SuiteConfig()
    rep = RunReport(command=f"suite {name}", seed=cfg.seed, inputs=asdict(cfg))
    start = time.perf_counter()
    SUITES[name][1](cfg, rep)
    rep.timing = time.perf_counter() - start
    return rep


__all__ = [
    "InstanceSpec",
    "RunReport",
    "SuiteConfig",
    "SUITES",
    "generate_instance",
    "glued_quartets",
    "reducible_pair",
    "run_suite",
    "random_character",
    "random_spanning_disjoint_partition",
    "taxon_names",
]
