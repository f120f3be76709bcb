"""
Axiom checkers for Lie algebras, modules, GCAs, pairings and DGLAs.

Validators never raise on a mathematical violation; they return a report listing every
offending basis pair or triple in index order. ``require`` turns a failing report into a
``ValidationError`` for callers that need valid input.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Dict, List

from src.foundation import Matrix, add_into, parity_sign, rank
from src.utils.errors import ValidationError, VALIDATION_ERROR
from src.utils.logging import logger
from .dgla import DGLA
from .gca import GCA
from .lie import LieAlgebra, LieModule
from .pairing import InvariantPairing


@dataclass
class ValidationReport:
    """Outcome of one validator run."""

    subject: str
    checked: int = 0
    issues: List[Dict[str, Any]] = field(default_factory=list)
    info: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, kind: str, **where) -> None:
        self.issues.append({'kind': kind, **where})

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subject': self.subject,
            'ok': self.ok,
            'checked': self.checked,
            'issues': self.issues,
            'info': self.info,
        }


def _fmt(vector) -> Dict[str, str]:
    return {str(k): str(v) for k, v in sorted(vector.items())}


class StructureValidator:
    """Class of checkers; one classmethod per structure."""

    @classmethod
    def require(cls, report: ValidationReport, what: str, code: str = VALIDATION_ERROR) -> None:
        if not report.ok:
            raise ValidationError(f"{what} failed validation ({len(report.issues)} issues)",
                                  report.to_dict(), code=code)

    @classmethod
    def validate_lie(cls, lie: LieAlgebra) -> ValidationReport:
        """
        Check antisymmetry on every basis pair and the Jacobi identity on every triple.

        Args:
            lie (LieAlgebra): The algebra to check

        Returns:
            ValidationReport: violations keyed by basis labels
        """
        report = ValidationReport(subject=lie.name)
        names = lie.basis
        for i in range(lie.dim):
            for j in range(i, lie.dim):
                report.checked += 1
                total = add_into(dict(lie.bracket_basis(i, j)), lie.bracket_basis(j, i))
                if total:
                    report.add('antisymmetry', pair=[names[i], names[j]], residual=_fmt(total))
        for i, j, k in combinations(range(lie.dim), 3):
            report.checked += 1
            jacobiator: Dict[int, Fraction] = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                add_into(jacobiator, lie.bracket({a: Fraction(1)}, lie.bracket_basis(b, c)))
            if jacobiator:
                report.add('jacobi', triple=[names[i], names[j], names[k]],
                           residual={names[t]: str(v) for t, v in sorted(jacobiator.items())})
        if not report.ok:
            logger.warning(f"Lie algebra {lie.name}: {len(report.issues)} axiom violations")
        return report

    @classmethod
    def validate_module(cls, module: LieModule) -> ValidationReport:
        """ρ([e_i, e_j]) = ρ_i ρ_j − ρ_j ρ_i on all pairs i < j."""
        report = ValidationReport(subject=module.name)
        lie = module.base
        for i, j in combinations(range(lie.dim), 2):
            report.checked += 1
            commutator = module.action[i] @ module.action[j] - module.action[j] @ module.action[i]
            image = Matrix.zeros(module.dimension, module.dimension)
            for k, c in lie.bracket_basis(i, j).items():
                image = image + module.action[k].scale(c)
            if commutator != image:
                report.add('module_bracket', pair=[lie.basis[i], lie.basis[j]])
        if not report.ok:
            logger.warning(f"module {module.name}: {len(report.issues)} violations")
        return report

    @classmethod
    def validate_gca(cls, gca: GCA) -> ValidationReport:
        """
        Unit, degree compatibility, graded commutativity, associativity, and when a
        differential is present d² = 0 and the graded Leibniz rule.
        """
        report = ValidationReport(subject=gca.name)
        n = gca.dim
        names = gca.names
        deg = gca.degrees
        if not (0 <= gca.unit < n) or deg[gca.unit] != 0:
            report.add('unit', element=names[gca.unit] if 0 <= gca.unit < n else None)
            return report
        for j in range(n):
            for key in ((gca.unit, j), (j, gca.unit)):
                raw = gca.raw_product(*key)
                if raw and raw != {j: Fraction(1)}:
                    report.add('unit', pair=[names[key[0]], names[key[1]]])
        for (i, j), value in sorted(gca.products.items()):
            if any(deg[k] != deg[i] + deg[j] for k in value):
                report.add('degree', pair=[names[i], names[j]])
        for i, value in sorted(gca.differential.items()):
            if any(deg[k] != deg[i] + 1 for k in value):
                report.add('differential_degree', element=names[i])
        for i in range(n):
            for j in range(i, n):
                report.checked += 1
                sign = -1 if deg[i] * deg[j] % 2 else 1
                residual = add_into(dict(gca.product_basis(i, j)), gca.product_basis(j, i), -sign)
                if residual:
                    report.add('graded_commutativity', pair=[names[i], names[j]])
        for i, j, k in product(range(n), repeat=3):
            report.checked += 1
            left = gca.multiply(gca.product_basis(i, j), {k: Fraction(1)})
            right = gca.multiply({i: Fraction(1)}, gca.product_basis(j, k))
            if add_into(left, right, -1):
                report.add('associativity', triple=[names[i], names[j], names[k]])
        if gca.has_differential:
            for i in range(n):
                report.checked += 1
                if gca.d(gca.differential.get(i, {})):
                    report.add('d_squared', element=names[i])
            for i, j in product(range(n), repeat=2):
                report.checked += 1
                left = gca.d(gca.product_basis(i, j))
                add_into(left, gca.multiply(gca.differential.get(i, {}), {j: Fraction(1)}), -1)
                add_into(left, gca.multiply({i: Fraction(1)}, gca.differential.get(j, {})),
                         -parity_sign(deg[i]))
                if left:
                    report.add('leibniz', pair=[names[i], names[j]])
        if gca.has_integration:
            top = gca.top_degree()
            for i in sorted(gca.integration):
                if deg[i] != top:
                    report.add('integration_degree', element=names[i])
        if not report.ok:
            logger.warning(f"GCA {gca.name}: {len(report.issues)} axiom violations")
        return report

    @classmethod
    def validate_pairing(cls, pairing: InvariantPairing) -> ValidationReport:
        """
        Symmetry and ad-invariance ⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0 on all basis triples; the
        report's info records whether the gram matrix has full rank.
        """
        lie = pairing.base
        report = ValidationReport(subject=pairing.name)
        names = lie.basis
        for i, j in combinations(range(lie.dim), 2):
            if pairing.pair_basis(i, j) != pairing.pair_basis(j, i):
                report.add('symmetry', pair=[names[i], names[j]])
        for i, j, k in product(range(lie.dim), repeat=3):
            report.checked += 1
            value = (pairing.pair(lie.bracket_basis(i, j), {k: Fraction(1)})
                     + pairing.pair({j: Fraction(1)}, lie.bracket_basis(i, k)))
            if value:
                report.add('invariance', triple=[names[i], names[j], names[k]], residual=str(value))
        report.info['nondegenerate'] = rank(pairing.gram) == lie.dim
        report.info['rank'] = rank(pairing.gram)
        if not report.ok:
            logger.warning(f"pairing {pairing.name}: {len(report.issues)} violations")
        return report

    @classmethod
    def validate_splitting(cls, lie: LieAlgebra) -> ValidationReport:
        """A declared splitting 𝔥 ⊕ 𝔭 must satisfy [𝔥,𝔥] ⊆ 𝔥 and [𝔥,𝔭] ⊆ 𝔭."""
        report = ValidationReport(subject=lie.name)
        if lie.splitting is None:
            report.add('no_splitting')
            return report
        h, p = (set(part) for part in lie.splitting)
        if h & p or h | p != set(range(lie.dim)):
            report.add('not_a_partition')
            return report
        for a in sorted(h):
            for b in range(lie.dim):
                report.checked += 1
                allowed = h if b in h else p
                if any(k not in allowed for k in lie.bracket_basis(a, b)):
                    report.add('splitting', pair=[lie.basis[a], lie.basis[b]])
        return report

    @classmethod
    def validate_dgla(cls, dgla: DGLA) -> ValidationReport:
        """Graded antisymmetry, graded Jacobi, graded Leibniz and d² = 0 on all basis data."""
        report = ValidationReport(subject=dgla.name)
        n = dgla.dim
        deg = [dgla.degree(i) for i in range(n)]
        unit = lambda s: {s: Fraction(1)}
        for s in range(n):
            report.checked += 1
            if dgla.d(dgla.differential_basis(s)):
                report.add('d_squared', element=dgla.label(s))
        for s, t in product(range(n), repeat=2):
            report.checked += 1
            sign = -1 if deg[s] * deg[t] % 2 else 1
            residual = add_into(dict(dgla.bracket_basis(s, t)), dgla.bracket_basis(t, s), sign)
            if residual:
                report.add('graded_antisymmetry', pair=[dgla.label(s), dgla.label(t)])
            left = dgla.d(dgla.bracket_basis(s, t))
            add_into(left, dgla.bracket(dgla.differential_basis(s), unit(t)), -1)
            add_into(left, dgla.bracket(unit(s), dgla.differential_basis(t)), -parity_sign(deg[s]))
            if left:
                report.add('leibniz', pair=[dgla.label(s), dgla.label(t)])
        for s, t, u in product(range(n), repeat=3):
            report.checked += 1
            left = dgla.bracket(unit(s), dgla.bracket_basis(t, u))
            add_into(left, dgla.bracket(dgla.bracket_basis(s, t), unit(u)), -1)
            sign = -1 if deg[s] * deg[t] % 2 else 1
            add_into(left, dgla.bracket(unit(t), dgla.bracket_basis(s, u)), -sign)
            if left:
                report.add('graded_jacobi', triple=[dgla.label(s), dgla.label(t), dgla.label(u)])
        return report
