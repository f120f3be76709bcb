"""
End-to-end runs of the command line: exit codes, report documents and provenance.
"""
import hashlib
import io
import json

import pytest

from src import __version__
from src.cli import ModuliDeskCLI, Report, parse_input
from src.utils.errors import BUDGET_EXCEEDED, PARSE_ERROR, UNKNOWN_BUILTIN, VALIDATION_ERROR

pytestmark = [pytest.mark.integration, pytest.mark.usefixtures('in_project')]


def run(*argv):
    out = io.StringIO()
    code = ModuliDeskCLI().run(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, '--json')
    return code, json.loads(text)


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class TestReports:
    def test_document_shape(self):
        code, doc = run_json('ce', 'cohomology', '--lie', 'sl2')
        assert code == 0
        assert set(doc) == {'command', 'status', 'payload', 'provenance'}
        assert doc['command'] == 'ce cohomology'
        assert doc['status'] == 'ok'
        assert doc['provenance']['version'] == __version__

    def test_builtin_provenance_hashes_the_reference(self):
        _, doc = run_json('ce', 'cohomology', '--lie', 'sl2')
        assert doc['provenance']['inputs']['sl2'] == sha256(b'sl2')

    def test_file_provenance_hashes_the_bytes(self, data_dir):
        _, doc = run_json('check', 'data/iso21.json')
        assert doc['provenance']['inputs']['data/iso21.json'] == sha256((data_dir / 'iso21.json').read_bytes())

    def test_json_is_canonical(self):
        _, text = run('holonomy', 'classes', '--group', 'S3', '--json')
        assert text.endswith('\n')
        assert Report.from_json(text).to_json() == text
        assert text == json.dumps(json.loads(text), sort_keys=True, separators=(',', ':'),
                                  ensure_ascii=False) + '\n'

    @pytest.mark.parametrize('argv', [
        ('check', 'data/iso21.json'),
        ('ce', 'cohomology', '--lie', 'heisenberg3'),
        ('mc', 'battery', '--battery', '6', '--seed', '11'),
        ('cs', 'battery', '--battery', '6', '--seed', '11'),
        ('cartan', 'battery', '--battery', '4', '--seed', '11'),
        ('simplicial', 'verify', '--max-n', '4', '--convention', 'printed'),
        ('stack', 'check', '--site', 'circle2', '--prestack', 'constantBG:S3'),
        ('holim', 'cech', '--site', 'circle2', '--prestack', 'constantBG:S3',
         '--object', 'S', '--cover', 'U1,U2'),
        ('prefact', 'check', '--data', 'data/prefact_odd.json'),
        ('obs', 'build', '--model', 'data/obs_two_points.json', '--degree', '2'),
        ('holonomy', 'classes', '--group', 'S3'),
    ], ids=['check', 'ce', 'mc', 'cs', 'cartan', 'simplicial', 'stack', 'holim', 'prefact', 'obs',
            'holonomy'])
    def test_thread_count_does_not_change_the_bytes(self, argv):
        _, single = run(*argv, '--json', '--threads', '1')
        _, pooled = run(*argv, '--json', '--threads', '4')
        assert single == pooled

    def test_text_rendering(self):
        code, text = run('ce', 'cohomology', '--lie', 'heisenberg3')
        assert code == 0
        assert text.startswith('ce cohomology: OK')
        assert 'dims:' in text

    def test_configured_json_output(self, mocker):
        mocker.patch('src.config.Config.OUTPUT_FORMAT', return_value='json')
        _, text = run('holonomy', 'count', '--group', 'Z2')
        assert json.loads(text)['payload']['count'] == 4


class TestErrors:
    def test_unknown_builtin_exits_two(self, capsys):
        code, doc = run_json('ce', 'cohomology', '--lie', 'so5')
        assert code == 2
        assert doc['status'] == 'error'
        assert doc['payload']['code'] == UNKNOWN_BUILTIN

    def test_text_mode_writes_the_error_to_stderr(self, capsys):
        code, text = run('ce', 'cohomology', '--lie', 'so5')
        assert code == 2
        assert f"error [{UNKNOWN_BUILTIN}]" in capsys.readouterr().err
        assert text.startswith('ce cohomology: ERROR')

    def test_invalid_file_is_a_validation_error(self):
        code, doc = run_json('check', 'data/bad_jacobi.json')
        assert code == 2
        assert doc['payload']['code'] == VALIDATION_ERROR
        issues = doc['payload']['details']['report']['issues']
        assert issues[0]['kind'] == 'jacobi'

    def test_broken_json_reports_its_line(self, tmp_path):
        broken = tmp_path / 'broken.json'
        broken.write_text('{"kind": "lie",\n "basis": [\n')
        code, doc = run_json('check', str(broken))
        assert code == 2
        assert doc['payload']['code'] == PARSE_ERROR
        assert doc['payload']['details']['line'] == 3

    def test_unknown_kind(self, tmp_path):
        odd = tmp_path / 'odd.json'
        odd.write_text('{"kind": "banana"}')
        code, doc = run_json('check', str(odd))
        assert code == 2
        assert doc['payload']['code'] == PARSE_ERROR

    def test_missing_option_is_reported(self):
        code, doc = run_json('mc', 'defect')
        assert code == 2
        assert '--element' in doc['payload']['message']

    def test_bad_arguments_exit_through_argparse(self):
        with pytest.raises(SystemExit) as info:
            run('simplicial', 'verify', '--max-n', '-1')
        assert info.value.code == 2


class TestCheck:
    @pytest.mark.parametrize('name,kind', [
        ('iso21.json', 'LieAlgebra'),
        ('circle_gca.json', 'GCA'),
        ('sl2_standard.json', 'LieModule'),
        ('sl2_trace.json', 'InvariantPairing'),
        ('truncated3.json', 'ArtinianAlgebra'),
        ('z3.json', 'FiniteGroup'),
        ('circle_site.json', 'Site'),
        ('constant_bz2.json', 'Prestack'),
        ('prefact_odd.json', 'PrefactData'),
        ('obs_two_points.json', 'ObsModel'),
    ])
    def test_every_input_format(self, name, kind):
        code, doc = run_json('check', f'data/{name}')
        assert code == 0
        assert doc['payload']['kind'] == kind
        assert doc['payload']['valid'] is True

    def test_parse_input_returns_the_domain_object(self):
        group = parse_input('data/z3.json')
        assert group.order == 3
        assert len(group.conjugacy_classes()) == 3


class TestAlgebraCommands:
    def test_cohomology_of_a_file_algebra(self):
        _, doc = run_json('ce', 'cohomology', '--lie', 'data/iso21.json', '--max-degree', '1')
        assert doc['payload']['dims'] == [1, 0]

    def test_homology(self):
        _, doc = run_json('ce', 'homology', '--lie', 'heisenberg3')
        assert doc['payload']['dims'] == [1, 2, 2, 1]

    def test_module_file_coefficients(self):
        _, doc = run_json('ce', 'cohomology', '--lie', 'sl2', '--coeffs', 'data/sl2_standard.json')
        assert doc['payload']['dims'] == [0, 0, 0, 0]

    def test_verify(self):
        code, doc = run_json('ce', 'verify', '--lie', 'sl2', '--coeffs', 'adjoint')
        assert code == 0
        assert (doc['payload']['h0'], doc['payload']['invariants']) == (0, 0)


class TestDeformationCommands:
    def test_defect_of_an_element_file(self):
        code, doc = run_json('mc', 'defect', '--element', 'data/mc_element.json')
        assert code == 0
        assert doc['payload']['is_mc'] is True

    def test_tangent(self):
        code, doc = run_json('mc', 'tangent')
        assert code == 0
        assert (doc['payload']['z1_dim'], doc['payload']['h1_dim']) == (6, 6)

    def test_obstructed_lift_fails(self):
        code, doc = run_json('mc', 'lift', '--artinian', 'truncated(3)',
                             '--element', 'th1:E:t, th2:F:t', '--order', '2')
        assert code == 1
        assert doc['payload']['lifted'] is False
        assert doc['payload']['obstruction']

    def test_gauge_covariance(self):
        code, doc = run_json('mc', 'gauge', '--artinian', 'truncated(3)',
                             '--element', 'th1:E:t, th2:F:t', '--x', '1:H:t')
        assert code == 0
        assert doc['payload']['covariant'] is True

    def test_path_file(self):
        code, doc = run_json('mc', 'path', '--path', 'data/gauge_path.json')
        assert code == 0
        assert doc['payload']['flatness']['holds'] and doc['payload']['homotopy']['holds']

    def test_battery(self):
        code, doc = run_json('mc', 'battery', '--battery', '5', '--seed', '3')
        assert code == 0
        assert doc['payload']['cases'] == 5

    def test_chern_simons_value(self):
        code, doc = run_json('cs', 'value', '--element', 'th1:J1:1, th2:P2:1, th3:J3:1')
        assert code == 0
        assert doc['payload']['value'] == '2'

    def test_flat_connection_is_critical(self):
        code, doc = run_json('cs', 'gradient', '--element', 'th1:P1:1, th2:P2:-2, th3:P3:1/3')
        assert code == 0
        assert doc['payload']['critical'] and doc['payload']['flat']

    def test_cartan_split(self):
        code, doc = run_json('cartan', 'split', '--element', 'th1:J1:1, th2:P2:1, th3:J3:1')
        assert code == 0
        assert doc['payload']['consistent'] is True


class TestSimplicialCommands:
    def test_printed_convention_fails(self):
        code, doc = run_json('simplicial', 'verify', '--max-n', '2', '--convention', 'printed')
        assert code == 1
        assert doc['payload']['header']['convention'] == 'printed'

    def test_standard_convention_passes(self):
        code, _ = run_json('simplicial', 'verify', '--max-n', '4')
        assert code == 0

    def test_factor(self):
        code, doc = run_json('simplicial', 'factor', '--map', '0,0,2')
        assert code == 0
        assert doc['payload']['codegeneracies'] == ['s0^1']
        assert doc['payload']['cofaces'] == ['d1^2']

    def test_roundtrip_counts_unfactorable_printed_maps(self):
        code, doc = run_json('simplicial', 'roundtrip', '--max-n', '2', '--convention', 'printed')
        assert code == 0
        assert doc['payload']['unfactorable'] > 0


class TestStackCommands:
    def test_constant_bg_fails_descent(self):
        code, doc = run_json('stack', 'check', '--site', 'circle2', '--prestack', 'constantBG:Z2')
        assert code == 1
        assert doc['payload']['is_stack'] is False

    def test_file_site_and_prestack(self, data_dir):
        code, doc = run_json('stack', 'check', '--site', 'data/circle_site.json',
                             '--prestack', 'data/constant_bz2.json')
        assert code == 1
        assert set(doc['provenance']['inputs']) == {'data/circle_site.json', 'data/constant_bz2.json'}

    def test_functions_are_a_stack(self):
        code, _ = run_json('stack', 'check', '--site', 'discrete2', '--prestack', 'functions:2')
        assert code == 0

    def test_holim_of_a_cover(self):
        code, doc = run_json('holim', 'cech', '--site', 'circle2', '--prestack', 'constantBG:S3',
                             '--object', 'S', '--cover', 'U1,U2')
        assert code == 0
        assert doc['payload']['pi0_holim'] == 3
        assert doc['payload']['holds'] is False

    def test_holim_of_a_constant_diagram(self):
        code, doc = run_json('holim', 'constant', '--group', 'Z2')
        assert code == 0
        assert doc['payload']['holim_objects'] == 1

    def test_prefact_files(self):
        assert run_json('prefact', 'check', '--data', 'data/prefact_odd.json')[0] == 0
        code, doc = run_json('prefact', 'check', '--data', 'data/prefact_unsigned.json')
        assert code == 1
        assert doc['payload']['failures'][0]['kind'] == 'permutation'

    def test_observables(self):
        code, doc = run_json('obs', 'build', '--model', 'data/obs_two_points.json', '--degree', '2')
        assert code == 0
        assert doc['payload']['dims'] == {'P': 3, 'PQ': 6, 'Q': 3}


class TestHolonomyCommands:
    def test_count(self):
        _, doc = run_json('holonomy', 'count', '--group', 'S3')
        assert doc['payload']['count'] == 18

    def test_group_file(self):
        _, doc = run_json('holonomy', 'count', '--group', 'data/z3.json', '--list')
        assert doc['payload']['count'] == 9
        assert len(doc['payload']['reps']) == 9

    def test_classes(self):
        _, doc = run_json('holonomy', 'classes', '--group', 'S3')
        assert doc['payload']['count'] == 8

    def test_bundle(self):
        code, doc = run_json('holonomy', 'bundle', '--group', 'S3', '--rep', '(12),e')
        assert code == 0
        assert doc['payload']['components'] == 3

    def test_budget(self):
        code, doc = run_json('holonomy', 'count', '--group', 'S3', '--genus', '2', '--budget', '100')
        assert code == 2
        assert doc['payload']['code'] == BUDGET_EXCEEDED
