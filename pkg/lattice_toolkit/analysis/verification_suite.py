"""
Acceptance checks on finite analogues, one method per claim, collected into
a pandas report.
"""

import logging
import time
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from lattice_toolkit.config import ToolkitConfig, get_config
from lattice_toolkit.errors import InvalidParameter, LatticeError
from lattice_toolkit.models.autgroup import automorphisms, find_rigid_simple, is_rigid
from lattice_toolkit.models.congruence import (
    Congruence, all_congruences, brute_force_congruences, congruence_count,
    is_simple, princ_poset, principal, restrict_map,
)
from lattice_toolkit.models.construct import (
    build_m3_cap, freese_composite, glued_sum, m3_cap,
    replace_atom_intervals, theta_of, tower, w_gadget, zero_separated,
)
from lattice_toolkit.models.enumeration import random_lattice
from lattice_toolkit.models.ideal_filter import filters, ideals, subspace_ideal
from lattice_toolkit.models.identity import (
    DISTRIBUTIVE_LAW, MODULAR_LAW, find_n5, identity_transfer_check, is_distributive,
    is_modular, is_relatively_complemented,
)
from lattice_toolkit.models.lattice import FiniteLattice, chain, stock
from lattice_toolkit.models.subspace import sub_lattice

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, str]

COLUMNS = ["check", "claim", "result", "detail", "seconds"]


def _is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


class VerificationSuite:
    """Runs the acceptance checks and reports them as a DataFrame."""

    CHECKS: Tuple[Tuple[str, str], ...] = (
        ("subspace_counts", "Sub(F_p^n) has the Gaussian sizes and is simple, modular, not distributive"),
        ("boolean_congruences", "|Con(2^m)| = 2^m"),
        ("glued_sums", "|Con| is multiplicative over glued sums and identities transfer"),
        ("tower", "|Con(tower(K, i))| = 2 + i and Con is a chain"),
        ("freese_composite", "|Con(freese_composite(2, 2, m, n))| = 2^m·3^n"),
        ("m3_cap_transport", "Con and Princ of an M3-cap match H when H is zero-separated"),
        ("oracle", "all_congruences agrees with the partition oracle; cg(a, b) is least"),
        ("ideals_filters", "ideals and filters are principal; subspace ideals are distinct"),
        ("theta_family", "Θ(X) differ for distinct coordinate sets X"),
        ("rigid_pipeline", "rigid simple lattices yield a rigid replacement and a cap with Aut(H)"),
        ("modularity", "modular lattices have 2^k congruences; W-gadgets are not modular"),
    )

    def __init__(self, config: Optional[ToolkitConfig] = None):
        self.config = get_config(config)
        self._corpus: Optional[List[FiniteLattice]] = None
        self._con_counts: Dict[int, int] = {}

    @property
    def corpus(self) -> List[FiniteLattice]:
        """Stock lattices followed by fixed-seed random lattices."""
        if self._corpus is None:
            rng = np.random.default_rng(self.config.RANDOM_SEED)
            fixed = [chain(1), chain(2), chain(3), stock("m3"), stock("n5"), stock("hexagon"), stock("boolean", 2)]
            sizes = rng.integers(1, self.config.CORPUS_MAX_ELEMENTS + 1, size=self.config.CORPUS_SIZE)
            self._corpus = fixed + [random_lattice(rng, int(size)) for size in sizes]
            logger.info("corpus of %d lattices", len(self._corpus))
        return self._corpus

    def _con_count(self, k: int) -> int:
        if k not in self._con_counts:
            self._con_counts[k] = len(all_congruences(self.corpus[k], self.config))
        return self._con_counts[k]

    def _simple_corpus(self, limit: int = 3) -> List[FiniteLattice]:
        return [lattice for lattice in self.corpus if lattice.size > 2 and is_simple(lattice)][:limit]

    def check_subspace_counts(self) -> Outcome:
        expected = {(2, 2): 5, (2, 3): 16, (2, 4): 67, (3, 2): 6}
        failures = []
        for (p, n), size in expected.items():
            lattice = sub_lattice(p, n, self.config)
            ok = (lattice.size == size and is_simple(lattice) and is_relatively_complemented(lattice)
                  and is_modular(lattice, self.config) and not is_distributive(lattice, self.config))
            if not ok:
                failures.append(f"sub:{p}:{n}")
        return not failures, ", ".join(failures) or f"{len(expected)} subspace lattices"

    def check_boolean_congruences(self) -> Outcome:
        counts = [len(all_congruences(stock("boolean", m), self.config)) for m in range(5)]
        return counts == [2 ** m for m in range(5)], f"counts {counts}"

    def check_glued_sums(self) -> Outcome:
        rng = np.random.default_rng(self.config.RANDOM_SEED + 1)
        n = len(self.corpus)
        pairs = rng.integers(0, n, size=(self.config.CORPUS_PAIRS, 2))
        failures = 0
        for i, j in pairs.tolist():
            lower, upper = self.corpus[i], self.corpus[j]
            glued = glued_sum(lower, upper, self.config)
            if congruence_count(glued) != self._con_count(i) * self._con_count(j):
                failures += 1
                continue
            for law in (MODULAR_LAW, DISTRIBUTIVE_LAW):
                if not identity_transfer_check(lower, upper, law, self.config).consistent:
                    failures += 1
                    break
        return failures == 0, f"{len(pairs)} pairs, {failures} failures"

    def check_tower(self) -> Outcome:
        failures = []
        for name, seed in (("m3", stock("m3")), ("sub:2:2", sub_lattice(2, 2, self.config))):
            for i in range(self.config.TOWER_STAGES + 1):
                stage = tower(seed, i, self.config)
                con = all_congruences(stage.lattice, self.config)
                blocks = {tuple(range(size)) for size in stage.stage_sizes}
                nested = all(
                    len(found) == 1 and found[0] in blocks
                    for found in stage.congruence_blocks()
                )
                if len(con) != 2 + i or not con.is_chain() or not nested:
                    failures.append(f"{name} stage {i}")
        return not failures, ", ".join(failures) or f"stages 0..{self.config.TOWER_STAGES} for two seeds"

    def check_freese_composite(self) -> Outcome:
        failures = []
        for m, n in ((1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (0, 2)):
            count = len(all_congruences(freese_composite(2, 2, m, n, self.config), self.config))
            if count != 2 ** m * 3 ** n:
                failures.append(f"(m={m}, n={n}) gave {count}")
        return not failures, "; ".join(failures) or "six (m, n) pairs"

    def _transport(self, base: FiniteLattice, h: FiniteLattice) -> Tuple[bool, bool, bool, int]:
        """Injectivity, surjectivity, order-isomorphism of restriction to H, and |Con(cap)|."""
        cap = build_m3_cap(base, h, self.config)
        h_sub = cap.lattice.sublattice(cap.h_ids)
        con_cap = all_congruences(cap.lattice, self.config)
        con_h = all_congruences(h_sub, self.config)
        images = [restrict_map(cap.lattice, cap.h_ids, theta, h_sub) for theta in con_cap]
        injective = len(set(images)) == len(con_cap)
        surjective = set(images) == set(con_h)
        monotone = all(
            (con_cap.order[i, j]) == (images[i] <= images[j])
            for i in range(len(images)) for j in range(len(images))
        )
        return injective, surjective, monotone, len(con_cap)

    def _prime_generated(self, base: FiniteLattice, h: FiniteLattice) -> bool:
        cap = build_m3_cap(base, h, self.config)
        h_sub = cap.lattice.sublattice(cap.h_ids)
        if not princ_poset(cap.lattice).poset.is_isomorphic(princ_poset(h_sub).poset):
            return False
        ids = sorted(cap.h_ids)
        from_h = {principal(cap.lattice, ids[a], ids[b]) for a, b in h_sub.covers}
        return all(theta in from_h for theta in princ_poset(cap.lattice) if not theta.is_identity)

    def check_m3_cap_transport(self) -> Outcome:
        bases = (sub_lattice(2, 2, self.config), stock("m3"))
        separated = [chain(2), stock("m3"), replace_atom_intervals(stock("m3"), {"a": chain(3)}, self.config)]
        separated += self._simple_corpus()
        failures = []
        for base in bases:
            for h in separated:
                injective, surjective, monotone, _ = self._transport(base, h)
                if not (zero_separated(h) and injective and surjective and monotone
                        and self._prime_generated(base, h)):
                    failures.append(f"H with {h.size} elements")
            for name, h, count in (("n5", stock("n5"), 3), ("hexagon", stock("hexagon"), 5)):
                injective, surjective, _, size = self._transport(base, h)
                if zero_separated(h) or not injective or surjective or size != count:
                    failures.append(name)
        detail = f"{len(separated)} zero-separated H and two that are not"
        return not failures, ", ".join(failures) or detail

    def check_oracle(self) -> Outcome:
        limit = self.config.ORACLE_MAX_ELEMENTS
        small = [lattice for lattice in self.corpus if lattice.size <= limit]
        failures = 0
        for lattice in small:
            con = all_congruences(lattice, self.config)
            if set(brute_force_congruences(lattice, self.config)) != set(con):
                failures += 1
                continue
            for a, b in zip(*np.nonzero(lattice.order)):
                theta = principal(lattice, int(a), int(b))
                if theta not in con or any(not theta <= other for other in con if other.contains(int(a), int(b))):
                    failures += 1
                    break
        return failures == 0, f"{len(small)} lattices, {failures} failures"

    def check_ideals_filters(self) -> Outcome:
        failures = 0
        for lattice in self.corpus:
            found_ideals, found_filters = ideals(lattice), filters(lattice)
            if not (len(found_ideals) == len(found_filters) == lattice.size
                    and all(i.is_principal for i in found_ideals)
                    and all(f.is_principal for f in found_filters)):
                failures += 1
        for n in range(1, 5):
            lattice = sub_lattice(2, n, self.config)
            subsets = [s for k in range(n + 1) for s in combinations(range(n), k)]
            members = {subspace_ideal(2, n, s, lattice).members for s in subsets}
            if len(members) != len(subsets):
                failures += 1
        return failures == 0, f"{len(self.corpus)} corpus lattices and Sub(F_2^n), n <= 4; {failures} failures"

    def check_theta_family(self) -> Outcome:
        failures = []
        for n, h in ((3, 1), (2, 2)):
            family: Sequence[Congruence] = [
                theta_of(n, h, subset, self.config)
                for k in range(n + 1) for subset in combinations(range(n), k)
            ]
            if len(set(family)) != 2 ** n:
                failures.append(f"{h + 1}^{n}")
        return not failures, ", ".join(failures) or "products 2^3 and 3^2"

    def check_rigid_pipeline(self) -> Outcome:
        found = find_rigid_simple(self.config.RIGID_SEARCH_MAX_SIZE, 3, self.config)
        distinct = all(not a.is_isomorphic(b) for a, b in combinations(found, 2))
        base = sub_lattice(2, 2, self.config)
        replaced = replace_atom_intervals(base, dict(zip(base.atoms, found)), self.config)
        hexagon = stock("hexagon")
        cap_order = automorphisms(m3_cap(replaced, hexagon, self.config), self.config).order
        hexagon_order = automorphisms(hexagon, self.config).order
        ok = distinct and is_rigid(replaced) and cap_order == hexagon_order
        sizes = [lattice.size for lattice in found]
        return ok, f"rigid simple sizes {sizes}, |Aut(cap)| = {cap_order}"

    def check_modularity(self) -> Outcome:
        failures = 0
        modular = 0
        for k, lattice in enumerate(self.corpus):
            if is_modular(lattice, self.config):
                modular += 1
                if not _is_power_of_two(self._con_count(k)):
                    failures += 1
            if lattice.size >= 2:
                gadget = w_gadget(lattice, config=self.config)
                if is_modular(gadget, self.config) or find_n5(gadget) is None:
                    failures += 1
        return failures == 0, f"{modular} modular corpus lattices, {failures} failures"

    def _method(self, name: str) -> Callable[[], Outcome]:
        return getattr(self, f"check_{name}")

    def run(self, names: Optional[Sequence[str]] = None) -> pd.DataFrame:
        """
        Run the named checks, or all of them.

        Args:
            names: Subset of the names in CHECKS

        Returns:
            DataFrame with columns check, claim, result, detail, seconds
        """
        wanted = set(names) if names else None
        unknown = sorted((wanted or set()) - {name for name, _ in self.CHECKS})
        if unknown:
            raise InvalidParameter(f"unknown checks: {', '.join(unknown)}")
        rows = []
        for name, claim in self.CHECKS:
            if wanted is not None and name not in wanted:
                continue
            start = time.perf_counter()
            try:
                passed, detail = self._method(name)()
            except LatticeError as exc:
                passed, detail = False, f"{type(exc).__name__}: {exc}"
            seconds = round(time.perf_counter() - start, 3)
            if passed:
                logger.info("%s passed in %.3fs", name, seconds)
            else:
                logger.warning("%s failed: %s", name, detail)
            rows.append({"check": name, "claim": claim, "result": "PASS" if passed else "FAIL",
                         "detail": detail, "seconds": seconds})
        return pd.DataFrame(rows, columns=COLUMNS)
