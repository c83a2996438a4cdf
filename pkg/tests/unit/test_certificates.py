"""Tests for certificate serialization and the certificate store"""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from src.bounds import derive_bound
from src.certs import CertificateFile, CertificateStore, StepRecord, dump, from_json
from src.cremona import EmptinessCertificate, SystemSpec, prove_empty
from src.demailly import verify_case
from src.exceptions import ParseError
from src.hilbert import PointMode
from tests.fixtures import TestDataBuilder


def table1_file(table1: SystemSpec) -> CertificateFile:
    result = prove_empty(table1)
    assert isinstance(result, EmptinessCertificate)
    return dump(result)


class TestDump:
    """Test flattening derivations into step lists"""

    def test_emptiness_certificate(self, table1: SystemSpec) -> None:
        cert = table1_file(table1)

        assert cert.kind == "emptiness"
        assert cert.claim == {"N": 4, "degree": "36m-1", "mults": "20m x9, 30m x1"}
        assert [step.rule for step in cert.steps] == [
            "open",
            "cremona",
            "cremona",
            "cremona",
            "contradiction",
        ]
        assert [step.inputs for step in cert.steps] == [[], [0], [1], [2], [3]]
        assert cert.steps[1].params == {
            "selection": [0, 1, 2, 3, 9],
            "k": "-2m-3",
            "m0": 1,
        }
        assert cert.steps[-1].params == {"witness": 3, "m0": 1}
        assert cert.m0 == 1
        assert cert.tags == []

    def test_glued_bound(self) -> None:
        cert = dump(derive_bound(4, 15))

        assert cert.kind == "bound"
        assert cert.claim == {"N": 4, "s": 15, "bound": "9/5"}
        assert [step.rule for step in cert.steps] == [
            "axiom",
            "empty-from-bound",
            "open",
            "cremona",
            "cremona",
            "cremona",
            "contradiction",
            "glue",
            "bound-from-empty",
        ]
        assert cert.steps[7].inputs == [1, 6]
        assert cert.steps[1].params == {"p": 30, "q": 20}
        assert len(cert.tags) == 1

    def test_shared_nodes_appear_once(self) -> None:
        cert = dump(derive_bound(4, 43))
        rules = [step.rule for step in cert.steps]

        assert rules.count("glue") == 7
        assert rules.count("axiom") == 1
        assert rules.count("empty-from-bound") == 1

    def test_negative_degree_witness(self) -> None:
        result = prove_empty(SystemSpec.parse(2, "-m-1", "m"))
        cert = dump(result)
        assert cert.steps[-1].params["witness"] == "negative-degree"

    def test_verdict(self) -> None:
        cert = dump(verify_case(5, 22, PointMode.GENERAL))

        assert cert.kind == "verdict"
        assert cert.claim["status"] == "PROVEN"
        assert cert.claim["achieved"] == "5/3"
        assert cert.claim["containment_r"] is None
        assert cert.steps[-1].rule == "decompose"

    def test_cannot_dump_uncertified(self) -> None:
        fact = TestDataBuilder.create_uncertified_fact(3, 5, Fraction(3, 2))
        with pytest.raises(ParseError, match="uncertified"):
            dump(fact)
        with pytest.raises(ParseError):
            dump("ahat >= 2")


class TestJsonFormat:
    """Test the JSON document format"""

    def test_round_trip_is_byte_identical(self) -> None:
        cert = dump(derive_bound(5, 125))
        text = cert.to_json()

        assert from_json(text).to_json() == text
        assert text.endswith("}\n")

    def test_certificate_id(self, table1: SystemSpec) -> None:
        cert = table1_file(table1)

        assert len(cert.certificate_id) == 16
        assert cert.certificate_id == table1_file(table1).certificate_id
        cert.m0 = 2
        assert cert.certificate_id != table1_file(table1).certificate_id

    def test_keys_are_sorted(self, table1: SystemSpec) -> None:
        data = json.loads(table1_file(table1).to_json())
        assert list(data) == ["claim", "kind", "m0", "steps", "tags", "version"]

    @pytest.mark.parametrize(
        "text,message",
        [
            ("{not json", "not valid JSON"),
            ("[]", "JSON object"),
            ('{"version": 2}', "Unsupported certificate version"),
            ('{"version": 1, "kind": "lemma"}', "Unknown certificate kind"),
            ('{"version": true}', "'version' must be int"),
            ('{"version": 1, "kind": "bound"}', "missing 'steps'"),
        ],
    )
    def test_malformed_documents(self, text: str, message: str) -> None:
        with pytest.raises(ParseError, match=message):
            from_json(text)

    def test_inputs_must_be_indices(self) -> None:
        doc = CertificateFile(
            "bound", {}, [StepRecord("split", {}, [0])], 1, []
        ).to_dict()
        doc["steps"][0]["inputs"] = [True]
        with pytest.raises(ParseError, match="step indices"):
            from_json(json.dumps(doc))


class TestCertificateStore:
    """Test the content-addressed certificate directory"""

    def test_save_and_load(self, temp_dir: Path, table1: SystemSpec) -> None:
        store = CertificateStore(temp_dir / "certs")
        cert = table1_file(table1)

        certificate_id = store.save(cert)

        assert certificate_id == cert.certificate_id
        assert store.path_for(certificate_id).exists()
        assert certificate_id in store
        assert store.load(certificate_id).to_json() == cert.to_json()

    def test_save_accepts_derivations(self, temp_dir: Path) -> None:
        store = CertificateStore(temp_dir)
        fact = derive_bound(3, 56)

        assert store.save(fact) == dump(fact).certificate_id

    def test_saving_twice_keeps_one_file(self, temp_dir: Path) -> None:
        store = CertificateStore(temp_dir)
        fact = derive_bound(4, 15)

        assert store.save(fact) == store.save(fact)
        assert len(store) == 1
        assert not list(temp_dir.glob("*.tmp"))

    def test_ids_are_sorted(self, temp_dir: Path) -> None:
        store = CertificateStore(temp_dir)
        for s in (14, 15, 8):
            store.save(derive_bound(4, s))
        assert store.ids() == sorted(store.ids())
        assert len(store.ids()) == 3

    def test_missing_directory_is_empty(self, temp_dir: Path) -> None:
        store = CertificateStore(temp_dir / "absent")
        assert store.ids() == []
        assert 42 not in store

    def test_load_unknown_id(self, temp_dir: Path) -> None:
        with pytest.raises(ParseError, match="No certificate"):
            CertificateStore(temp_dir).load("0123456789abcdef")
