"""HTTP facade: golden request/response fixtures and schema conformance."""

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient
from jsonschema import Draft7Validator

from logictutor.service import ServiceConfig, create_app

GOLDEN_DIR = Path(__file__).parent / "golden"
SCHEMA_PATH = Path(__file__).parent.parent / "docs" / "api-schema.json"
SCHEMA = json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))


def make_client(store_path=None, **config_overrides) -> TestClient:
    return TestClient(
        create_app(ServiceConfig(store_path=store_path, **config_overrides))
    )


def substitute(value, variables):
    if isinstance(value, str):
        for name, replacement in variables.items():
            value = value.replace("{{" + name + "}}", replacement)
        return value
    if isinstance(value, dict):
        return {k: substitute(v, variables) for k, v in value.items()}
    if isinstance(value, list):
        return [substitute(v, variables) for v in value]
    return value


def assert_matches(expected, actual, where=""):
    if expected == "<ANY>":
        return
    if isinstance(expected, dict):
        assert isinstance(actual, dict), f"{where}: expected object, got {actual!r}"
        assert set(expected) == set(actual), (
            f"{where}: keys {sorted(actual)} != {sorted(expected)}"
        )
        for key, value in expected.items():
            assert_matches(value, actual[key], f"{where}.{key}")
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(expected) == len(actual), (
            f"{where}: length mismatch"
        )
        for index, (e, a) in enumerate(zip(expected, actual)):
            assert_matches(e, a, f"{where}[{index}]")
    else:
        assert expected == actual, f"{where}: {actual!r} != {expected!r}"


def validate_schema(name: str, body) -> None:
    validator = Draft7Validator(
        {"$ref": f"#/definitions/{name}", "definitions": SCHEMA["definitions"]}
    )
    errors = sorted(validator.iter_errors(body), key=str)
    assert not errors, f"schema {name}: {[e.message for e in errors]}"


def run_script(script: dict) -> None:
    config = script.get("config", {})
    client = make_client(**config)
    variables: dict[str, str] = {}
    for index, step in enumerate(script["steps"]):
        request = substitute(step["request"], variables)
        method = request["method"]
        kwargs = {}
        if "params" in request:
            kwargs["params"] = request["params"]
        if method != "GET":
            kwargs["json"] = request.get("body", {})
        response = client.request(method, request["path"], **kwargs)
        where = f"step {index} {method} {request['path']}"
        assert response.status_code == step["expect"]["status"], (
            f"{where}: {response.status_code} body={response.text}"
        )
        body = response.json()
        assert_matches(step["expect"]["body"], body, where)
        if "schema" in step:
            validate_schema(step["schema"], body)
        for name, key in step.get("save", {}).items():
            variables[name] = body[key]


GOLDEN_SCRIPTS = sorted(GOLDEN_DIR.glob("*.json"))


@pytest.mark.parametrize(
    "path", GOLDEN_SCRIPTS, ids=[p.stem for p in GOLDEN_SCRIPTS]
)
def test_golden_script(path):
    run_script(json.loads(path.read_text(encoding="utf-8")))


class TestMalformedBodies:
    def test_validation_errors_carry_machine_readable_code(self):
        client = make_client()
        response = client.post("/api/attempt/n01/step", json={"session": "x"})
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "bad_request"
        validate_schema("error", body)


class TestStatelessness:
    def test_replicas_sharing_store_agree(self, tmp_path):
        store = str(tmp_path / "shared.json")
        first = make_client(store_path=store)
        token = first.post("/api/session", json={}).json()["session"]
        first.post(
            "/api/attempt/n01/step",
            json={"session": token, "rule": "DoubleNegation", "expression": "p"},
        )
        second = make_client(store_path=store)
        a = first.get("/api/progress", params={"session": token}).json()
        b = second.get("/api/progress", params={"session": token}).json()
        assert a == b
        assert a["questions"]["n01"] == "completed"


class TestStaticFrontend:
    def test_static_dir_served_when_present(self, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>shell</body></html>")
        client = make_client(static_dir=str(tmp_path))
        response = client.get("/")
        assert response.status_code == 200
        assert "shell" in response.text
        # API routes still take precedence
        assert client.get("/api/rules").status_code == 200
