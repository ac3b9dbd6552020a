import json
import os
import pathlib
import shutil
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schemas():
    from jsonschema import Draft202012Validator
    from referencing import Registry, Resource

    docs = {n: json.loads((ROOT / "schema" / n).read_text()) for n in ("algebra.schema.json", "report.schema.json")}
    registry = Registry().with_resources([(d["$id"], Resource.from_contents(d)) for d in docs.values()])
    return {
        "algebra": Draft202012Validator(docs["algebra.schema.json"], registry=registry),
        "report": Draft202012Validator(docs["report.schema.json"], registry=registry),
    }


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("MODLIE_CLI") or shutil.which("modlie") or str(ROOT / "build" / "modlie")
    if not pathlib.Path(exe).exists():
        pytest.skip("modlie CLI not built")

    def run(*args, check=True):
        p = subprocess.run([exe, *map(str, args)], capture_output=True, text=True)
        if check and p.returncode != 0:
            raise AssertionError(f"modlie {' '.join(map(str, args))}: exit {p.returncode}\n{p.stderr}")
        return p

    return run
