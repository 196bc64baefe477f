"""
Report models for verification runs
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = 'pass'
FAIL = 'fail'


@dataclass
class OracleTally:
    """Outcome of one brute-force cross-check"""
    name: str
    tested: int = 0
    failed: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    def record(self, ok: bool, counterexample: Optional[Dict[str, Any]] = None):
        self.tested += 1
        if not ok:
            self.failed += 1
            if counterexample is not None:
                self.counterexamples.append(counterexample)

    def record_batch(self, tested: int, failed: int, counterexamples: List[Dict[str, Any]]):
        """Record a block of checks evaluated at once"""
        self.tested += tested
        self.failed += failed
        self.counterexamples.extend(counterexamples)

    def finalize(self, limit: int) -> 'OracleTally':
        """Sort counterexamples by their input and keep the first `limit`"""
        self.counterexamples.sort(key=lambda item: json.dumps(item.get('input'), sort_keys=True))
        del self.counterexamples[limit:]
        return self

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def to_dict(self):
        """Convert tally to dictionary"""
        return {
            'name': self.name,
            'tested': self.tested,
            'failed': self.failed,
            'counterexamples': list(self.counterexamples),
        }

    def __repr__(self):
        return f'<OracleTally {self.name}: {self.failed}/{self.tested} failed>'


@dataclass
class Check:
    """One named check inside a report"""
    name: str
    status: str
    data: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, include_timing=True):
        """Convert check to dictionary"""
        data = {
            'name': self.name,
            'status': self.status,
            'data': self.data,
        }
        if include_timing:
            data['elapsed_ms'] = round(self.elapsed_ms, 3)
        return data

    def __repr__(self):
        return f'<Check {self.name} ({self.status})>'


@dataclass
class Report:
    """Report emitted by every command"""
    tool_version: str
    command: List[str]
    checks: List[Check] = field(default_factory=list)
    findings: List[Dict[str, Any]] = field(default_factory=list)

    def add(self, check: Check):
        self.checks.append(check)
        self.checks.sort(key=lambda c: c.name)

    def add_finding(self, finding: Dict[str, Any]):
        self.findings.append(finding)
        self.findings.sort(key=lambda f: json.dumps(f, sort_keys=True))

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self, include_timing=True):
        """Convert report to dictionary"""
        return {
            'tool_version': self.tool_version,
            'command': list(self.command),
            'passed': self.passed,
            'checks': [check.to_dict(include_timing) for check in self.checks],
            'findings': list(self.findings),
        }

    def to_json(self, include_timing=True) -> str:
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True)

    def __repr__(self):
        return f'<Report {" ".join(self.command)}: {len(self.checks)} checks>'
