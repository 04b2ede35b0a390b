"""Smoke test for the pybohemian extension.

Build it first (see README), then run: python3 python/smoke_test.py
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import pybohemian as pb


def main():
    # t^3 m_{8,2}(-t) for the n = 5 construction inside the family
    m = pb.build_mignotte_h2_in_family(5)
    assert m.dim == 11 and m.height == 2
    chi = m.charpoly()
    assert str(chi) == "t^11 - 8*t^5 - 8*t^4 - 2*t^3", chi
    assert m.newton_check()

    k, q = chi.strip_t_power()
    assert k == 3 and q.degree == 8
    assert pb.eisenstein_irreducible(q, 2)

    # the family member is recovered from its coefficients
    a = pb.poly_to_coeffs(chi, 5, 2)
    block = pb.coeffs_to_spec(5, 2, a)
    assert pb.charpoly_structural(5, 2, block) == chi
    assert pb.build_bohemian(5, 2, block) == m

    # close roots of a Mignotte polynomial near 1/8
    p = pb.mignotte_poly(4, 8)
    assert p.coeffs() == [-2, 32, -128, 0, 1]
    assert p.real_root_count() == 4
    cert = json.loads(pb.certify(p, "1*2^-8"))
    assert cert["meets_claim"] is True, cert

    cover = pb.double_cover(pb.build_mignotte_h2(5))
    assert cover.dim == 22 and cover.height == 1
    cert = json.loads(pb.certify_construction("wilkinson", 6, 4))
    assert cert["meets_claim"] is True

    # t^4 - 2 is irreducible mod 5, t^4 - 1 is not
    assert pb.irreducible_mod_p([3, 0, 0, 0, 1], 5)
    assert not pb.irreducible_mod_p([4, 0, 0, 0, 1], 5)

    report = json.loads(pb.census(2, 4, mode="mod5", shards=2))
    assert report["mod5_matching_count"] == "3"
    assert report["theorem_bound_met"] is True
    report = json.loads(pb.census(2, 3, sample=None))
    assert report["distinct_charpolys"] == "81"

    assert pb.explicit_bound(9, 2, h2_variant=True) == "1/2097152"
    try:
        pb.census(4, 3, cap=1000)
    except pb.EnumerationCapError:
        pass
    else:
        raise AssertionError("expected EnumerationCapError")

    print("pybohemian smoke test: ok")


if __name__ == "__main__":
    main()
