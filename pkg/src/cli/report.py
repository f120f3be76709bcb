"""
Command reports: a status, a structured payload and provenance, rendered as text or
as a single canonical JSON document.
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

import pandas as pd

from src import __version__

OK, FAIL, ERROR = 'ok', 'fail', 'error'
EXIT_CODES = {OK: 0, FAIL: 1, ERROR: 2}


@dataclass
class Report:
    """``tables`` feed the text rendering only; the JSON document carries the payload."""

    command: str
    status: str
    payload: Dict[str, Any] = field(default_factory=dict)
    inputs: Dict[str, str] = field(default_factory=dict)
    version: str = __version__
    tables: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict, compare=False)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'status': self.status,
            'payload': self.payload,
            'provenance': {'inputs': dict(sorted(self.inputs.items())), 'version': self.version},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'), ensure_ascii=False,
                          default=str) + '\n'

    @classmethod
    def from_json(cls, text: str) -> 'Report':
        data = json.loads(text)
        provenance = data.get('provenance', {})
        return cls(data['command'], data['status'], data.get('payload', {}),
                   provenance.get('inputs', {}), provenance.get('version', __version__))

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.status.upper()}"]
        for key, value in sorted(self.payload.items()):
            if key in self.tables:
                continue
            lines.append(f"  {key}: {_inline(value)}")
        for name, rows in self.tables.items():
            lines.append('')
            lines.append(f"{name}:")
            lines.append(pd.DataFrame(rows).to_string(index=False) if rows else '  (none)')
        return '\n'.join(lines) + '\n'

    def render(self, as_json: bool) -> str:
        return self.to_json() if as_json else self.to_text()


def _inline(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, ensure_ascii=False, default=str)
    return str(value)


def error_report(command: str, error: Mapping[str, Any], inputs: Optional[Dict[str, str]] = None) -> Report:
    return Report(command, ERROR, dict(error), dict(inputs or {}))
