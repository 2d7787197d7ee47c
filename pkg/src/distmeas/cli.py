"""Command-line front end.

The CLI is a thin client of the HTTP service: by default it mounts the
service in-process (no network, no running server needed, reports stay
byte-reproducible); ``--server URL`` targets a remote instance instead.

Exit codes: 0 when every check behaved as expected, 1 when any check
failed, 2 on input errors (malformed JSON, schema violations, inconsistent
dimensions).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .jsonout import canonical_json, render_report_lines, render_report_table, render_sweep_table


def _client(server: str | None):
    if server is not None:
        return httpx.Client(base_url=server, timeout=300.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # test-client import warns on some stacks
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app())


def _fail_input(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _post(server: str | None, path: str, body: dict) -> httpx.Response:
    try:
        with _client(server) as client:
            return client.post(path, json=body)
    except httpx.HTTPError as exc:
        _fail_input(f"cannot reach service: {exc}")


def _handle_error_response(resp: httpx.Response):
    try:
        detail = resp.json().get("detail", resp.text)
    except ValueError:
        detail = resp.text
    if isinstance(detail, list):  # pydantic validation errors carry field locations
        parts = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
            parts.append(f"{loc}: {item.get('msg', '')}" if loc else item.get("msg", ""))
        detail = "; ".join(parts)
    _fail_input(str(detail))


def _emit(text: str, out: str | None):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _comma_ints(ctx, param, value: str) -> list[int]:
    try:
        return [int(v) for v in value.split(",") if v.strip() != ""]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}")


@click.group()
def main():
    """Verify the distant effects of unitary subsystem measurements."""


@main.command()
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json",
              show_default=True, help="json emits one report per line.")
@click.option("--tolerance", type=float, default=None, help="Override the file's tolerance.")
@click.option("--seed", type=int, default=None, help="Override the file's seed.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the report stream to a file instead of stdout.")
@click.option("--server", default=None, help="Base URL of a running service.")
def run(scenario_file: str, fmt: str, tolerance: float | None, seed: int | None,
        out: str | None, server: str | None):
    """Run the checks requested by a scenario file."""
    raw_text = Path(scenario_file).read_text(encoding="utf-8")
    try:
        raw = json.loads(raw_text)
    except json.JSONDecodeError as exc:
        _fail_input(f"{scenario_file}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(raw, dict):
        _fail_input(f"{scenario_file}: top-level value must be an object")
    if tolerance is not None:
        raw["tolerance"] = tolerance
    if seed is not None:
        raw["seed"] = seed

    resp = _post(server, "/run", raw)
    if resp.status_code != 200:
        _handle_error_response(resp)
    payload = resp.json()
    if fmt == "json":
        _emit(render_report_lines(payload["reports"]), out)
    else:
        _emit(render_report_table(payload["reports"]), out)
    sys.exit(0 if payload["passed"] else 1)


@main.command()
@click.option("--a1", callback=_comma_ints, default="2,3", show_default=True,
              help="Remote-subsystem dimensions, comma separated.")
@click.option("--a2", callback=_comma_ints, default="2,3", show_default=True,
              help="Nearby-subsystem dimensions, comma separated.")
@click.option("--pointer", callback=_comma_ints, default="2,4", show_default=True,
              help="Pointer dimensions, comma separated.")
@click.option("--count", type=int, default=10, show_default=True,
              help="Scenarios per dimension combination.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--checks", default="eq5,eq7,eq8,eq9,eq11a,eq12,eq13,eq15,eq16b",
              show_default=True, help="Check ids, comma separated.")
@click.option("--tolerance", type=float, default=1e-10, show_default=True)
@click.option("--negative-controls", is_flag=True, default=False,
              help="Include sabotaged scenarios that must fail.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--server", default=None, help="Base URL of a running service.")
def sweep(a1, a2, pointer, count, seed, checks, tolerance, negative_controls,
          fmt, out, server):
    """Run seeded random scenarios over a grid of dimensions."""
    body = {
        "a1": a1,
        "a2": a2,
        "pointer": pointer,
        "count": count,
        "seed": seed,
        "checks": [c for c in checks.split(",") if c.strip()],
        "tolerance": tolerance,
        "negative_controls": negative_controls,
    }
    resp = _post(server, "/sweep", body)
    if resp.status_code != 200:
        _handle_error_response(resp)
    aggregate = resp.json()
    for item in aggregate["skipped"]:
        click.echo(
            f"warning: skipped a1={item['a1']} a2={item['a2']} pointer={item['pointer']}: "
            f"{item['reason']}",
            err=True,
        )
    if fmt == "json":
        _emit(canonical_json(aggregate) + "\n", out)
    else:
        _emit(render_sweep_table(aggregate), out)
    sys.exit(0 if aggregate["all_passed"] else 1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int):
    """Start the HTTP service."""
    import uvicorn

    uvicorn.run("distmeas.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
