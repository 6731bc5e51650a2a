"""Deterministic CSV/JSON report writers.

Reports carry no timestamps, no environment echoes, and floats are written
with repr (shortest round-trip form), so identical inputs produce
byte-identical files — reruns of a seeded config are diffable.
"""

import csv
import io
import json

from .certificates import CSV_COLUMNS

__all__ = ["render_csv", "render_json", "write_reports"]


def render_csv(certificates) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for cert in certificates:
        writer.writerow(cert.to_csv_row())
    return buf.getvalue()


def _json_default(obj):
    raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def render_json(certificates, profiles=None, config=None, functionals=None) -> str:
    """Full report: certificates with error budgets, keyed summary, inputs."""
    payload = {
        "certificates": [c.to_json_dict() for c in certificates],
        "summary": {
            "total": len(certificates),
            "passed": sum(1 for c in certificates if c.passed),
            "failed": [
                {"check": c.name, "profile_id": c.profile_id, "epsilon": c.epsilon}
                for c in certificates
                if not c.passed
            ],
        },
    }
    if profiles is not None:
        payload["profiles"] = profiles
    if functionals is not None:
        payload["functionals"] = functionals
    if config is not None:
        payload["config"] = config
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default) + "\n"


def write_reports(certificates, csv_path=None, json_path=None, profiles=None, config=None, functionals=None):
    if csv_path is not None:
        with open(csv_path, "w", newline="") as fh:
            fh.write(render_csv(certificates))
    if json_path is not None:
        with open(json_path, "w") as fh:
            fh.write(render_json(certificates, profiles=profiles, config=config, functionals=functionals))
