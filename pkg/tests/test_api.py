import inspect
from fractions import Fraction

import pytest
from fastapi import HTTPException

from crud.SeriesCoefficient import cached_vdp_coefficients, get_coefficients, store_coefficients
from crud.ShootRecord import create_shoot_record, get_shoot_record_by_id, list_shoot_records
from model.SeriesCoefficient import SeriesCoefficient
from router.Shoot import read_shoot_record, read_shoot_records, shoot_brusselator, shoot_vdp
from schema.ShootResult import ShootResult


def shoot_result(family="vdp", eps=0.2, im=0.00153):
    return ShootResult(
        family=family,
        eps=eps,
        re_parameter=0.9684,
        im_parameter=im,
        parameter_text=f"(0.9684 + {im}j)",
        residual=1e-12,
        iterations=6,
        precision_digits=16,
        stokes_observable=1.07,
    )


def test_series_endpoint_serves_and_caches(client, db_session):
    response = client.get("/api/series/vdp", params={"n": 3})
    assert response.status_code == 200
    assert response.json()["a"][:3] == ["1", "-1/8", "-3/32"]
    assert db_session.query(SeriesCoefficient).count() == 4
    again = client.get("/api/series/vdp", params={"n": 2})
    assert again.json()["a"] == ["1", "-1/8", "-3/32"]
    assert db_session.query(SeriesCoefficient).count() == 4


def test_series_order_is_bounded(client):
    assert client.get("/api/series/vdp", params={"n": 10_000}).status_code == 422


def test_bn_endpoint(client):
    response = client.get("/api/series/bn", params={"start": 1, "stop": 3, "digits": 8})
    assert response.status_code == 200
    assert set(response.json()["b"]) == {"1", "2", "3"}
    assert client.get("/api/series/bn", params={"start": 5, "stop": 3}).status_code == 400


def test_brusselator_constants(client):
    response = client.get("/api/series/brusselator", params={"n": 1})
    assert response.status_code == 200
    assert response.json()["a"] == ["3/2", "15/8"]


def test_relief_check_endpoint(client):
    body = {"spec": "vdp", "points_re": [9, 1], "points_im": [0, 0]}
    response = client.post("/api/relief/check", json=body)
    assert response.status_code == 200
    assert response.json()["descending"] is True
    reverse = client.post("/api/relief/check", json={**body, "points_re": [1, 9]})
    assert reverse.json()["descending"] is False


def test_relief_check_rejects_bad_input(client):
    body = {"spec": "vdp", "points_re": [1, 1], "points_im": [0, 0]}
    response = client.post("/api/relief/check", json=body)
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "degenerate_path"
    mismatched = client.post("/api/relief/check", json={"points_re": [0, 1], "points_im": [0]})
    assert mismatched.status_code == 422


def test_relief_value_endpoint(client):
    response = client.get("/api/relief/value", params={"spec": "brusselator", "re": -1})
    assert response.json()["value"] == pytest.approx(1 / 3)
    assert client.get("/api/relief/value", params={"spec": "lorenz", "re": 0}).status_code == 422


def test_inner_endpoint(client):
    response = client.get("/api/inner/vdp", params={"x": 3})
    assert response.status_code == 200
    payload = response.json()
    assert payload["family"] == "vdp"
    assert payload["diff_im"] == pytest.approx(2.017e-7, rel=0.2)
    assert client.get("/api/inner/vdp", params={"x": 20}).status_code == 422


def test_fit_endpoint_on_a_short_range(client):
    response = client.get("/api/asymptotics/fit", params={"model": "cbrt", "start": 20, "stop": 30})
    assert response.status_code == 200
    assert response.json()["points"] == 11


def test_shoot_records_listing(client, db_session):
    first = create_shoot_record(db_session, shoot_result())
    create_shoot_record(db_session, shoot_result("brusselator", 0.1, 1e-4))
    response = client.get("/api/shoot/records", params={"family": "vdp"})
    assert response.status_code == 200
    [record] = response.json()
    assert record["id"] == first.id
    assert record["im_parameter"] == pytest.approx(0.00153)
    assert len(client.get("/api/shoot/records").json()) == 2
    assert client.get(f"/api/shoot/records/{first.id}").json()["family"] == "vdp"
    assert client.get("/api/shoot/records/999").status_code == 404


def test_cache_stops_at_the_first_gap(db_session):
    store_coefficients(db_session, "vdp", [Fraction(1), Fraction(-1, 8)])
    store_coefficients(db_session, "vdp", [Fraction(7)], start=5)
    assert get_coefficients(db_session, "vdp", 10) == [Fraction(1), Fraction(-1, 8)]


def test_cache_skips_stored_orders(db_session):
    assert store_coefficients(db_session, "vdp", [Fraction(1), Fraction(-1, 8)]) == 2
    assert store_coefficients(db_session, "vdp", [Fraction(1), Fraction(-1, 8), Fraction(-3, 32)]) == 1
    assert cached_vdp_coefficients(db_session, 2) == (Fraction(1), Fraction(-1, 8), Fraction(-3, 32))


def test_crud_records_directly(db_session):
    record = create_shoot_record(db_session, shoot_result(eps=0.17))
    assert record.created_at is not None
    assert [r.eps for r in list_shoot_records(db_session)] == [0.17]
    assert get_shoot_record_by_id(db_session, record.id).mirrored is False
    with pytest.raises(HTTPException):
        get_shoot_record_by_id(db_session, record.id + 1)


def test_shoot_endpoints_leave_the_event_loop_free():
    assert not inspect.iscoroutinefunction(shoot_vdp)
    assert not inspect.iscoroutinefunction(shoot_brusselator)
    assert inspect.iscoroutinefunction(read_shoot_records)
    assert inspect.iscoroutinefunction(read_shoot_record)


def test_failed_shoot_is_a_422_record(client):
    response = client.post(
        "/api/shoot/vdp", params={"eps": 0.2}, json={"max_iterations": 2, "match_tol": 1e-300}
    )
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "no_convergence"
