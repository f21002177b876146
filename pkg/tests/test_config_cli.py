"""Problem-config parsing and the command line front end."""

from fractions import Fraction
from pathlib import Path

import pytest

from tautres import cli
from tautres.config import (
    ConfigError,
    build_problem,
    build_surface,
    load_config,
    parse_config,
)
from tautres.assemble import evaluate
from tautres.poly import MPoly


CONFIGS = Path(__file__).resolve().parent.parent / "configs"


# -- parsing ------------------------------------------------------------------


def test_parse_full_config_with_comments():
    cfg = parse_config(
        """
        # one-node problem
        [vars]
        z10 1
        z01 1   # innermost first
        [numerator]
        (z10 - z01)^2
        chern 2
        [denominator]
        (z10*z01)^2
        [segre] order=2 vars=z10,z01
        [prefactor]
        -1/2
        [surface]
        preset generic-surface
        """
    )
    assert cfg.var_lines == (("z10", 1), ("z01", 1))
    assert cfg.numerator_lines == ("(z10 - z01)^2", "chern 2")
    assert cfg.denominator_lines == ("(z10*z01)^2",)
    assert (cfg.segre_order, cfg.segre_vars) == (2, ("z10", "z01"))
    assert cfg.prefactor == Fraction(-1, 2)
    assert cfg.surface_line == "preset generic-surface"


def test_parse_weights_are_all_or_none():
    with pytest.raises(ConfigError, match="all .* or none"):
        parse_config("[vars]\nz1 1\nz2\n")
    cfg = parse_config("[vars]\nz1\nz2\n")
    assert cfg.var_lines == (("z1", None), ("z2", None))


def test_parse_errors():
    with pytest.raises(ConfigError, match="empty or missing"):
        parse_config("")
    with pytest.raises(ConfigError, match="unknown section"):
        parse_config("[stuff]\nx\n")
    with pytest.raises(ConfigError, match="unterminated"):
        parse_config("[vars\nz1\n")
    with pytest.raises(ConfigError, match="before any section"):
        parse_config("z1\n[vars]\nz1\n")
    with pytest.raises(ConfigError, match="bad weight"):
        parse_config("[vars]\nz1 heavy\n")
    with pytest.raises(ConfigError, match="name \\[weight\\]"):
        parse_config("[vars]\nz1 1 2\n")
    with pytest.raises(ConfigError, match="multiple \\[prefactor\\]"):
        parse_config("[vars]\nz1\n[prefactor]\n1\n2\n")
    with pytest.raises(ConfigError, match="bad prefactor"):
        parse_config("[vars]\nz1\n[prefactor]\none half\n")
    with pytest.raises(ConfigError, match="unknown \\[segre\\] token"):
        parse_config("[vars]\nz1\n[segre]\ndepth=2\n")


# -- surfaces -------------------------------------------------------------------


def test_build_surface_presets():
    s = build_surface("preset generic-surface")
    assert (s.name, s.dim) == ("generic-surface", 2)
    p = build_surface("preset P2 d=4")
    assert p.pairing == {"L^2": 16, "L*c1": -12, "c1^2": 9, "c2": 3}
    with pytest.raises(ConfigError, match="unknown preset"):
        build_surface("preset K3")
    with pytest.raises(ConfigError, match="needs a name"):
        build_surface("preset")
    with pytest.raises(ConfigError, match="bad preset arguments"):
        build_surface("preset generic-surface d=2")


def test_build_surface_custom():
    s = build_surface("custom dim=2 chern=c1:1,c2:2 segre=c1;c1^2-c2")
    assert s.chern_symbols == (("c1", 1), ("c2", 2))
    assert s.segre_values == ("c1", "c1^2-c2")
    with pytest.raises(ConfigError, match="needs dim=, chern=, segre="):
        build_surface("custom dim=2")
    with pytest.raises(ConfigError, match="segre values"):
        build_surface("custom dim=2 chern=c1:1 segre=c1")
    with pytest.raises(ConfigError, match="preset.*or.*custom"):
        build_surface("flat")


# -- problem building --------------------------------------------------------------


def test_build_problem_denominator_split():
    cfg = parse_config(
        """
        [vars]
        z1 1
        z2 1
        [denominator]
        z1
        (z1*z2)^2
        (2*z1 - z2)
        (z1 + z2)
        """
    )
    prob, surface = build_problem(cfg)
    ctx = prob.ctx
    assert surface.dim == 2
    # plain monomials become exact inverse Laurent factors
    assert prob.laurent_prefactors == (
        MPoly.var(ctx, "z1", -1),
        MPoly.from_terms(ctx, {(-2, -2, 0, 0, 0): 1}),
    )
    assert [repr(f) for f in prob.denominator] == ["(2*z1 - z2)", "(z1 + z2)"]


def test_build_problem_segre_checks():
    with pytest.raises(ConfigError, match="does not match surface dimension"):
        build_problem(parse_config("[vars]\nz1\n[segre]\norder=3 vars=z1\n"))
    with pytest.raises(ConfigError, match="not a declared variable"):
        build_problem(parse_config("[vars]\nz1\n[segre]\norder=2 vars=z9\n"))


def test_build_problem_rejects_bad_lines():
    with pytest.raises(ConfigError, match="bad numerator line"):
        build_problem(parse_config("[vars]\nz1\n[numerator]\nq + 1\n"))
    with pytest.raises(ConfigError, match="chern clause"):
        build_problem(parse_config("[vars]\nz1\n[numerator]\nchern 2 3\n"))
    with pytest.raises(ConfigError, match="constant denominator"):
        build_problem(parse_config("[vars]\nz1\n[denominator]\n(L)\n"))
    with pytest.raises(ConfigError, match="weakly monotone"):
        build_problem(parse_config("[vars]\nz1 2\nz2 1\n"))


def test_config_route_reproduces_one_node_coefficient():
    prob, surface = build_problem(load_config(CONFIGS / "one_node.cfg"))
    sel = evaluate(prob, surface)
    assert sel.remainder.is_zero()
    assert sel.coefficients == {
        "L^2": Fraction(3),
        "L*c1": Fraction(2),
        "c1^2": Fraction(0),
        "c2": Fraction(1),
    }


def test_config_route_reproduces_two_node_coefficient():
    prob, surface = build_problem(load_config(CONFIGS / "two_node.cfg"))
    sel = evaluate(prob, surface)
    assert sel.remainder.is_zero()
    assert sel.coefficients == {
        "L^2": Fraction(-42),
        "L*c1": Fraction(-39),
        "c1^2": Fraction(-6),
        "c2": Fraction(-7),
    }


# -- command line -----------------------------------------------------------------


def lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


def test_cli_severi_one_node(capsys):
    assert cli.main(["severi", "--r", "1"]) == 0
    assert lines(capsys) == [
        "value 3*L^2 + 2*L*c1 + c2",
        "L^2 3 1",
        "L*c1 2 1",
        "c1^2 0 1",
        "c2 1 1",
    ]


def test_cli_severi_two_node_with_plane_counts(capsys):
    assert cli.main(["severi", "--r", "2", "--d", "4"]) == 0
    out = lines(capsys)
    assert out[0] == "value -42*L^2 - 39*L*c1 - 6*c1^2 - 7*c2"
    assert out[1:5] == ["L^2 -42 1", "L*c1 -39 1", "c1^2 -6 1", "c2 -7 1"]
    assert out[5] == "a_2[P2 d=4] -279 1"
    assert out[6] == "N_2[P2 d=4] 225 1"


def test_cli_eval_config(capsys):
    assert cli.main(["eval", str(CONFIGS / "one_node.cfg")]) == 0
    out = lines(capsys)
    assert out[0] == "value 3*L^2 + 2*L*c1 + c2"
    assert out[3] == "c1^2 0 1"


def test_cli_mdeg(capsys):
    assert cli.main(["mdeg", "--gens", "2,0;1,1;0,2", "--weights", "a,b"]) == 0
    assert lines(capsys) == ["codim 2", "mdeg 3*a*b"]
    assert cli.main(["mdeg", "--gens", "1,1", "--weights", "a,b"]) == 0
    assert lines(capsys) == ["codim 1", "mdeg a + b"]


def test_cli_ghilb_two_points(capsys):
    assert cli.main(["ghilb", "--k", "2", "--phi", "c2", "--evaluate"]) == 0
    out = capsys.readouterr().out
    assert "term {1,2}" in out
    assert "term {1}{2}" in out
    assert "residue 0" in out
    assert "residue L_1*L_2" in out
    assert "prefactor -1" in out


def test_cli_verify(capsys):
    assert cli.main(["verify"]) == 0
    out = lines(capsys)
    assert out[-1] == "10/10 criteria passed"
    assert len([l for l in out if l.startswith("PASS")]) == 10


def test_cli_error_exits(tmp_path, capsys):
    empty = tmp_path / "empty.cfg"
    empty.write_text("")
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", str(empty)])
    assert exc.value.code == 2
    assert "empty or missing" in capsys.readouterr().err

    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", str(tmp_path / "missing.cfg")])
    assert exc.value.code == 2

    with pytest.raises(SystemExit) as exc:
        cli.main(["mdeg", "--gens", "2;x", "--weights", "a"])
    assert exc.value.code == 2

    with pytest.raises(SystemExit) as exc:
        cli.main(["severi", "--r", "1", "--epd", "z10"])
    assert exc.value.code == 2

    with pytest.raises(SystemExit) as exc:
        cli.main(["severi", "--r", "4"])
    assert exc.value.code == 2
    assert "impractical" in capsys.readouterr().err

    with pytest.raises(SystemExit) as exc:
        cli.main(["ghilb", "--k", "2", "--q", "nocolon"])
    assert exc.value.code == 2

    with pytest.raises(SystemExit):
        cli.main([])
