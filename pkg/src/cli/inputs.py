"""
Input resolution for the command line: builtin references or JSON files, each
validated by its owning module before any computation runs.
"""
import hashlib
import json
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Union

from src.algebra import (GCA, DGLA, FiniteGroup, InvariantPairing, LieAlgebra, LieModule,
                         StructureValidator, build_dgla, group_builtin, module_builtin,
                         pairing_builtin, resolve_builtin, validate_group)
from src.deformation import (ArtinianAlgebra, DeformationSpace, PolyPath, TensorElement,
                             artinian_builtin, element_from_payload, validate_artinian)
from src.stacks import (ObsModel, PrefactData, Prestack, Site, prestack_builtin, site_builtin,
                        validate_prefact, validate_prestack, validate_site)
from src.utils.errors import DeskError, ParseError, INVALID_INPUT, TYPE_MISMATCH
from src.utils.logging import logger
from src.utils.validation import InputValidator


def _digest(content: bytes) -> str:
    return hashlib.sha256(content).hexdigest()


class InputResolver:
    """
    Resolves every input of one command and remembers a sha256 digest per input
    (file bytes, or the reference text for builtins) for report provenance.
    """

    def __init__(self):
        self.digests: Dict[str, str] = {}

    # Raw access

    def is_file(self, reference: str) -> bool:
        return Path(reference).is_file()

    def load_json(self, path: Union[str, Path]) -> Any:
        """
        Raises:
            ParseError: missing file, bad encoding, or invalid JSON (with its line)
        """
        path = Path(path)
        if not path.is_file():
            raise ParseError("no such input file", file=str(path))
        raw = path.read_bytes()
        self.digests[str(path)] = _digest(raw)
        try:
            return json.loads(raw.decode('utf-8'))
        except UnicodeDecodeError:
            raise ParseError("input is not UTF-8 text", file=str(path))
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, file=str(path), line=e.lineno)

    def _builtin(self, reference: str) -> str:
        self.digests[reference] = _digest(reference.encode('utf-8'))
        return reference

    def _either(self, reference: str, from_builtin: Callable[[str], Any],
                from_file: Callable[[Any, str], Any]) -> Any:
        if self.is_file(reference):
            data = self.load_json(reference)
            logger.debug(f"Loaded {reference}")
            return from_file(data, reference)
        return from_builtin(self._builtin(reference))

    # Algebra

    def algebra(self, reference: str) -> Union[LieAlgebra, GCA]:
        """A Lie algebra or a GCA; files are told apart by their basis entries."""
        def from_file(data, source):
            basis = data.get('basis') if isinstance(data, Mapping) else None
            if basis and isinstance(basis[0], Mapping):
                return self._checked_gca(GCA.from_dict(data, source))
            return self._checked_lie(LieAlgebra.from_dict(data, source))
        return self._either(reference, resolve_builtin, from_file)

    def lie(self, reference: str) -> LieAlgebra:
        value = self.algebra(reference)
        if not isinstance(value, LieAlgebra):
            raise DeskError(TYPE_MISMATCH, f"{reference} is not a Lie algebra")
        return value

    def gca(self, reference: str) -> GCA:
        value = self.algebra(reference)
        if not isinstance(value, GCA):
            raise DeskError(TYPE_MISMATCH, f"{reference} is not a graded-commutative algebra")
        return value

    @staticmethod
    def _checked_lie(lie: LieAlgebra) -> LieAlgebra:
        StructureValidator.require(StructureValidator.validate_lie(lie), f"Lie algebra {lie.name}")
        return lie

    @staticmethod
    def _checked_gca(gca: GCA) -> GCA:
        StructureValidator.require(StructureValidator.validate_gca(gca), f"GCA {gca.name}")
        return gca

    def dgla(self, reference: str) -> DGLA:
        """``gca*lie`` with either factor a builtin or a file, in either order."""
        parts = InputValidator.split_product(reference)
        if len(parts) != 2:
            raise DeskError(INVALID_INPUT, f"a DGLA is written gca*lie, got {reference!r}")
        first, second = (self.algebra(p) for p in parts)
        if isinstance(first, LieAlgebra):
            first, second = second, first
        if not isinstance(first, GCA) or not isinstance(second, LieAlgebra):
            raise DeskError(TYPE_MISMATCH, f"{reference!r} must pair a GCA with a Lie algebra")
        return build_dgla(first, second)

    def module(self, lie: LieAlgebra, reference: str) -> LieModule:
        def from_file(data, source):
            module = LieModule.from_dict(lie, data, source)
            StructureValidator.require(StructureValidator.validate_module(module), f"module {module.name}")
            return module
        return self._either(reference, lambda name: module_builtin(lie, name), from_file)

    def pairing(self, lie: LieAlgebra, reference: str) -> InvariantPairing:
        def from_file(data, source):
            pairing = InvariantPairing.from_dict(lie, data, source)
            StructureValidator.require(StructureValidator.validate_pairing(pairing), f"pairing {pairing.name}")
            return pairing
        return self._either(reference, lambda name: pairing_builtin(lie, name), from_file)

    def artinian(self, reference: str) -> ArtinianAlgebra:
        def from_builtin(text):
            name, params = InputValidator.parse_builtin(text)
            return artinian_builtin(name, params)

        def from_file(data, source):
            algebra = ArtinianAlgebra.from_dict(data, source)
            StructureValidator.require(validate_artinian(algebra), f"Artinian algebra {algebra.name}")
            return algebra
        return self._either(reference, from_builtin, from_file)

    def group(self, reference: str) -> FiniteGroup:
        def from_file(data, source):
            group = FiniteGroup.from_dict(data, source)
            StructureValidator.require(validate_group(group), f"group {group.name}")
            return group
        return self._either(reference, lambda text: group_builtin(text.replace('builtin:', '')), from_file)

    # Deformation inputs

    def space(self, dgla: str, artinian: str, simplex: int = 0) -> DeformationSpace:
        return DeformationSpace(self.dgla(dgla), self.artinian(artinian), simplex)

    def element(self, space: DeformationSpace, reference: str) -> TensorElement:
        """A JSON list of term rows (or ``{"terms": [...]}``), else an inline term list."""
        if self.is_file(reference):
            data = self.load_json(reference)
            rows = data.get('terms') if isinstance(data, Mapping) else data
            if not isinstance(rows, list):
                raise ParseError("element file needs a list of terms", file=reference)
            return element_from_payload(space, rows, reference)
        return space.from_terms(InputValidator.parse_terms(self._builtin(reference)))

    def path(self, space: DeformationSpace, reference: str) -> PolyPath:
        data = self.load_json(reference)
        if not isinstance(data, Mapping) or 'a0' not in data:
            raise ParseError("path file needs 'a0' and 'a1' term lists", file=reference)
        return PolyPath(element_from_payload(space, data['a0'], reference),
                        element_from_payload(space, data.get('a1', []), reference))

    # Stacks inputs

    def site(self, reference: str) -> Site:
        def from_file(data, source):
            site = Site.from_dict(data, source)
            StructureValidator.require(validate_site(site), f"site {site.name}")
            return site
        return self._either(reference, lambda text: site_builtin(text.replace('builtin:', '')), from_file)

    def prestack(self, site: Site, reference: str) -> Prestack:
        def from_file(data, source):
            prestack = Prestack.from_dict(site, data, source)
            StructureValidator.require(validate_prestack(prestack), f"prestack {prestack.name}")
            return prestack
        return self._either(reference, lambda text: prestack_builtin(site, text), from_file)

    def prefact(self, reference: str) -> PrefactData:
        data = PrefactData.from_dict(self.load_json(reference), reference)
        StructureValidator.require(validate_prefact(data), f"prefactorization data {data.name}")
        return data

    def obs_model(self, reference: str) -> ObsModel:
        return ObsModel.from_dict(self.load_json(reference), reference)


KINDS = ('lie', 'gca', 'module', 'pairing', 'artinian', 'group', 'site', 'prestack', 'prefact', 'obs')


def _sibling(path: str, reference: str) -> str:
    """A reference that names a file next to ``path`` resolves there; anything else is returned as is."""
    candidate = Path(path).parent / reference
    if not Path(reference).is_file() and candidate.is_file():
        return str(candidate)
    return reference


def parse_input(path: str, resolver: Optional[InputResolver] = None) -> Any:
    """
    Load a JSON input file whose ``kind`` names its format and return the validated
    domain object. Modules and pairings name their Lie algebra under ``lie``,
    prestacks their site under ``site``.

    Raises:
        ParseError: unreadable file or unknown kind
        ValidationError: the owning validator rejected the object
    """
    resolver = resolver or InputResolver()
    data = resolver.load_json(path)
    kind = data.get('kind') if isinstance(data, Mapping) else None
    if kind not in KINDS:
        raise ParseError(f"'kind' must be one of {', '.join(KINDS)}", file=str(path))
    if kind == 'lie':
        return resolver.lie(str(path))
    if kind == 'gca':
        return resolver.gca(str(path))
    if kind in ('module', 'pairing'):
        if 'lie' not in data:
            raise ParseError(f"a {kind} file names its Lie algebra under 'lie'", file=str(path))
        lie = resolver.lie(_sibling(path, str(data['lie'])))
        return resolver.module(lie, str(path)) if kind == 'module' else resolver.pairing(lie, str(path))
    if kind == 'artinian':
        return resolver.artinian(str(path))
    if kind == 'group':
        return resolver.group(str(path))
    if kind == 'site':
        return resolver.site(str(path))
    if kind == 'prestack':
        if 'site' not in data:
            raise ParseError("a prestack file names its site under 'site'", file=str(path))
        return resolver.prestack(resolver.site(_sibling(path, str(data['site']))), str(path))
    if kind == 'prefact':
        return resolver.prefact(str(path))
    return resolver.obs_model(str(path))
