from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from surreal_workbench.cli import run

# name, argv, stdin, stdout, exit code, error code of the first failure
GOLDEN = [
    ('square', ['eval', 'w*w'], None, 'w^(2)\n', 0, None),
    ('inverse_order_3', ['eval', '--order', '3', '1/(w+1)'], None, 'w^(-1) + w^(-2)*(-1) + w^(-3)\n', 0, None),
    ('derive_expression', ['eval', 'D(exp(w))'], None, 'w^(w)\n', 0, None),
    ('log_omega', ['eval', 'log(w)'], None, 'w^(w^(-1))\n', 0, None),
    ('exp_omega', ['eval', 'exp(w)'], None, 'w^(w)\n', 0, None),
    ('two_inputs', ['eval', 'w + 1', 'w - 1'], None, 'w + 1\nw + -1\n', 0, None),
    ('json_output', ['eval', '--format', 'json', 'w + 1'], None, '{"input":"w + 1","format":"conway","text":"w + 1","value":{"terms":[{"exp":{"terms":[{"exp":{"terms":[]},"coeff":"1"}]},"coeff":"1"},{"exp":{"terms":[]},"coeff":"1"}]},"remainder_bound":null}\n', 0, None),
    ('parse_error', ['eval', 'w + * 2'], None, '', 2, 'parse'),
    ('exact_mode_exp_constant', ['eval', 'exp(w+1)'], None, '', 3, 'coefficient_not_representable'),
    ('log_negative', ['eval', 'log(-w)'], None, '', 4, 'not_positive'),
    ('log_too_deep', ['eval', 'log_20(w)'], None, '', 5, 'depth_exceeded'),
    ('depth_option', ['eval', '--depth', '3', 'exp_4(w)'], None, '', 5, 'depth_exceeded'),
    ('ladder_product', ['eval', 'log_2(w) * exp(w)'], None, 'w^(w + w^(-2))\n', 0, None),
    ('omega_map', ['eval', 'W(1/2) + W(-1)*3'], None, 'w^(1/2) + w^(-1)*3\n', 0, None),
    ('unsupported_exponent', ['eval', 'W(W(1/3))'], None, '', 3, 'unsupported_exponent'),
    ('simplest_expr', ['eval', 'simplest({0}, {1})'], None, '1/2\n', 0, None),
    ('stdin_batch', ['eval'], 'w*w\n# comment\n\nlog(w)\n', 'w^(2)\nw^(w^(-1))\n', 0, None),
    ('division_by_zero', ['eval', '1/(w-w)'], None, '', 4, 'division_by_zero'),
    ('worked_expansion', ['expand', '--order', '2', '--coeff', 'float:50', '(w+1)^w'], None, '2.7182818284590452353602874713526624977572470937*x^(x) - 1.35914091422952261768014373567633124887862354685*x^(x - 1) + O(x^(x - 2))\n', 0, None),
    ('expand_omega', ['expand', '--order', '5', 'w'], None, 'x\n', 0, None),
    ('expand_exp_inverse', ['expand', '--order', '3', 'exp(1/w)'], None, '1 + x^(-1) + 1/2*x^(-2) + O(x^(-3))\n', 0, None),
    ('derive_square', ['derive', 'w^2'], None, 'w*2\n', 0, None),
    ('derive_exp', ['derive', 'exp(w)'], None, 'w^(w)\n', 0, None),
    ('derive_log2', ['derive', 'log_2(w)'], None, 'w^(-1 + w^(-1)*(-1))\n', 0, None),
    ('derive_constant', ['derive', '3'], None, '0\n', 0, None),
    ('compose_log_exp', ['compose', 'log(w)', 'exp(w)'], None, 'w\n', 0, None),
    ('compose_truncated', ['compose', '--order', '3', 'log(w)', 'w + 1'], None, 'w^(w^(-1)) + w^(-1) + w^(-2)*(-1/2)\n', 0, None),
    ('compose_stdin', ['compose'], 'w^2 ; exp(w)\n', 'w^(w*2)\n', 0, None),
    ('compose_finite_argument', ['compose', 'w', '1/w'], None, '', 4, 'not_infinite'),
    ('signexp_rational', ['signexp', '3/4'], None, '+-+\n', 0, None),
    ('signexp_signs', ['signexp', '+-+'], None, '3/4\n', 0, None),
    ('signexp_leading_minus', ['signexp', '-+'], None, '-1/2\n', 0, None),
    ('signexp_not_dyadic', ['signexp', '1/3'], None, '', 4, 'not_dyadic'),
    ('signexp_json_negative', ['signexp', '--format', 'json', '-5/2'], None, '{"input":"-5/2","signs":"---+","value":"-5/2","birthday":4}\n', 0, None),
    ('simplest_half', ['simplest', '{0}', '{1}'], None, '1/2\n', 0, None),
    ('simplest_empty', ['simplest', '{}', '{}'], None, '0\n', 0, None),
    ('simplest_bad_gap', ['simplest', '{1}', '{0}'], None, '', 4, 'gap_violation'),
    ('simplest_three_quarters', ['simplest', '{5/8}', '{7/8}'], None, '3/4\n', 0, None),
    ('rank_scaled', ['rank', '3*exp(w)'], None, '1\n', 0, None),
    ('rank_atom', ['rank', 'exp(w)'], None, '0\n', 0, None),
    ('rank_zero', ['rank', '0'], None, '', 4, 'zero_argument'),
    ('rank_inexact', ['rank', '1/(w+1)'], None, '', 4, 'precision_loss'),
    ('paths_two', ['paths', 'exp(w) + log(w)'], None, 'exp(w)\nlog(w)\n', 0, None),
    ('paths_scaled', ['paths', '3*exp(w)'], None, '3*exp(w) -> w\n', 0, None),
    ('paths_constant', ['paths', '3'], None, '', 0, None),
    ('paths_json', ['paths', '--format', 'json', 'log(w)'], None, '{"input":"log(w)","paths":[{"steps":["log(w)"],"terminal":-1}]}\n', 0, None),
    ('level_lower', ['level', 'w', 'exp(w)'], None, 'lower\n', 0, None),
    ('level_same', ['level', 'w', 'w^2'], None, 'same\n', 0, None),
    ('level_finite', ['level', '2', 'w'], None, '', 4, 'not_infinite'),
]


def call(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdin=io.StringIO(stdin or ""), stdout=out, stderr=err)
    diags = [json.loads(line) for line in err.getvalue().splitlines()]
    return out.getvalue(), code, diags


@pytest.mark.parametrize("name, argv, stdin, stdout, code, error", GOLDEN, ids=[g[0] for g in GOLDEN])
def test_golden(name, argv, stdin, stdout, code, error):
    out, got_code, diags = call(argv, stdin)
    assert out == stdout
    assert got_code == code
    errors = [d for d in diags if "error" in d]
    if error is None:
        assert not errors
    else:
        assert errors[0]["error"] == error
        assert errors[0]["exit_code"] == code


def test_golden_is_deterministic():
    for _, argv, stdin, stdout, _, _ in GOLDEN[:12]:
        assert call(argv, stdin)[0] == call(argv, stdin)[0] == stdout


def test_parse_error_position():
    _, code, diags = call(["eval", "w + * 2"])
    assert code == 2
    assert diags[0]["position"] == 5
    assert "NUMBER" in diags[0]["expected"]
    _, _, diags = call(["eval", "exp(w"])
    assert diags[0]["position"] == 6


def test_remainder_bound_on_stderr():
    out, code, diags = call(["eval", "--order", "3", "1/(w+1)"])
    assert code == 0
    assert diags == [{"input": "1/(w+1)", "remainder_bound": "w^(-4)", "order": 3}]


def test_exit_code_is_first_error():
    out, code, diags = call(["eval", "log_20(w)", "log(-w)", "w"])
    assert code == 5
    assert out == "w\n"
    assert [d["error"] for d in diags] == ["depth_exceeded", "not_positive"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["eval", "w + )"], 2),
        (["eval", "exp(w+1)"], 3),
        (["eval", "W(W(1/3))"], 3),
        (["simplest", "{1}", "{0}"], 4),
        (["eval", "1/(w-w)"], 4),
        (["eval", "log(0)"], 4),
        (["level", "2", "w"], 4),
        (["signexp", "1/3"], 4),
        (["rank", "0"], 4),
        (["rank", "exp(1/w)"], 4),
        (["eval", "--depth", "2", "W(W(W(1)))"], 5),
    ],
)
def test_exit_codes(argv, code):
    assert call(argv)[1] == code


def test_usage_errors():
    assert call(["eval", "--order", "0", "w"])[1] == 2
    with pytest.raises(SystemExit):
        call(["frobnicate", "w"])
    with pytest.raises(SystemExit):
        call(["compose", "w"])


def test_options_anywhere():
    assert call(["eval", "1/(w+1)", "--order", "2"])[0] == "w^(-1) + w^(-2)*(-1)\n"
    assert call(["--format=json", "signexp", "1"])[0].startswith('{"input":"1"')
    assert call(["signexp", "--", "-1"])[0] == "-\n"


def test_numeric_precision_option():
    out, code, _ = call(["eval", "--coeff", "float:20", "exp(w+1)"])
    assert code == 0 and out.startswith("w^(w)*2.71828182845904523")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "surreal_workbench", "simplest", "{0}", "{1}"],
        capture_output=True, text=True, check=False,
    )
    assert (proc.returncode, proc.stdout) == (0, "1/2\n")
