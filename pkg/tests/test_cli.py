# -*- coding: UTF-8 -*-

import pytest

import lib.core.config as cfg

from srkit import main


SMALL_RUN = [
	'run', '--preset', 'fig1a',
	'--m', '60', '--n', '20', '--k', '3', '--k-hat', '5', '--j', '6',
	'--budget', '10', '--trials', '2', '--threads', '1', '-q'
]

SMALL_INSTANCE = [
	'gen-instance',
	'--m', '4', '--n', '5', '--k', '5', '--k-hat', '5', '--j', '2',
	'--corrupt-count-min', '0', '--corrupt-count-max', '0',
	'--corrupt-mean', '0', '--corrupt-std', '1', '-q'
]


@pytest.fixture(autouse=True)
def plain_output(monkeypatch):
	monkeypatch.setattr(cfg, 'ISATTY', False)
	monkeypatch.setattr(cfg, 'QUIET', False)
	monkeypatch.setattr(cfg, 'VERBOSE', False)


def _exit_code(argv):
	with pytest.raises(SystemExit) as excinfo:
		main(argv)
	return excinfo.value.code


# ----------------------------------------------------------
# ---------------------- List Presets ----------------------
# ----------------------------------------------------------


def test_list_presets(capsys):
	assert main(['list-presets']) == 0

	lines = capsys.readouterr().out.splitlines()
	assert len(lines) == 8
	assert all(line.startswith('fig') for line in lines)

	by_name = {line.split()[0]: line for line in lines}
	assert {'fig1a', 'fig7'} <= set(by_name)
	assert 'corruptions=1..3' in by_name['fig3']


# ----------------------------------------------------------
# -------------------------- Run ---------------------------
# ----------------------------------------------------------


def test_no_arguments():
	assert _exit_code([]) == 2


def test_run_requires_out(capsys):
	assert _exit_code(['run', '--preset', 'fig1a']) == 2
	assert '--out' in capsys.readouterr().err


def test_run_rejects_bad_k_hat(tmp_path, capsys):
	assert _exit_code(SMALL_RUN[:-1] + ['--k-hat', '21', '-o', str(tmp_path / 'x.csv')]) == 2
	assert '--k-hat' in capsys.readouterr().err


def test_run_requires_dimensions_without_preset(tmp_path, capsys):
	argv = ['run', '--n', '10', '--k', '2', '--k-hat', '3', '--j', '2', '--budget', '5', '-o', str(tmp_path / 'x.csv')]

	assert _exit_code(argv) == 2
	assert '--m' in capsys.readouterr().err


def test_run_rejects_unknown_preset(tmp_path):
	assert _exit_code(['run', '--preset', 'fig6', '-o', str(tmp_path / 'x.csv')]) == 2


def test_run_rejects_mmv_online(tmp_path):
	argv = SMALL_RUN[:2] + ['fig4', '--algorithm', 'mmv', '-o', str(tmp_path / 'x.csv')]
	assert _exit_code(argv) == 2


def test_run_writes_both_curves(tmp_path, capsys):
	out = tmp_path / 'curves.csv'
	assert main(SMALL_RUN + ['-o', str(out)]) == 0

	lines = out.read_text().splitlines()
	assert lines[0] == 'label,projection,mean,std'
	assert {line.split(',')[0] for line in lines[1:]} == {'mmv', 'cmmv'}

	summary = capsys.readouterr().out
	assert 'mmv: final recovery' in summary
	assert 'cmmv: final recovery' in summary


def test_run_is_reproducible(tmp_path):
	first, second = tmp_path / 'a.csv', tmp_path / 'b.csv'

	assert main(SMALL_RUN + ['-o', str(first)]) == 0
	assert main(SMALL_RUN + ['-o', str(second)]) == 0
	assert first.read_bytes() == second.read_bytes()


def test_run_seed_changes_output(tmp_path):
	first, second = tmp_path / 'a.csv', tmp_path / 'b.csv'

	main(SMALL_RUN + ['--budget', '3', '-o', str(first)])
	main(SMALL_RUN + ['--budget', '3', '--seed', '5', '-o', str(second)])
	assert first.read_bytes() != second.read_bytes()


def test_run_verbose_table(tmp_path, capsys):
	assert main(SMALL_RUN + ['-v', '-o', str(tmp_path / 'x.csv')]) == 0
	assert 'Support-Recovery' in capsys.readouterr().out


def test_run_unwritable_output(tmp_path):
	blocker = tmp_path / 'file'
	blocker.write_text('')

	assert _exit_code(SMALL_RUN + ['-o', str(blocker / 'x.csv')]) == 1


# ----------------------------------------------------------
# ---------------------- Gen Instance ----------------------
# ----------------------------------------------------------


def test_gen_instance_full_support(tmp_path):
	out_dir = tmp_path / 'inst'
	assert main(SMALL_INSTANCE + ['--out-dir', str(out_dir)]) == 0

	assert (out_dir / 'support.txt').read_text().splitlines() == ['1 5', '0 1 2 3 4']
	assert (out_dir / 'corruptions.txt').read_text().splitlines() == ['2 5', '', '']
	assert (out_dir / 'matrix.txt').read_text().splitlines()[0] == '4 5'


def test_gen_instance_is_reproducible(tmp_path):
	first, second = tmp_path / 'a', tmp_path / 'b'

	main(SMALL_INSTANCE + ['--out-dir', str(first)])
	main(SMALL_INSTANCE + ['--out-dir', str(second)])

	for name in ('matrix.txt', 'signals.txt', 'measurements.txt', 'support.txt', 'corruptions.txt'):
		assert (first / name).read_bytes() == (second / name).read_bytes()


def test_gen_instance_rejects_file_out_dir(tmp_path):
	blocker = tmp_path / 'file'
	blocker.write_text('')

	assert _exit_code(SMALL_INSTANCE + ['--out-dir', str(blocker)]) == 2


def test_gen_instance_without_k_hat(tmp_path):
	argv = SMALL_INSTANCE[:7] + SMALL_INSTANCE[9:]
	assert '--k-hat' not in argv
	out_dir = tmp_path / 'inst'

	assert main(argv + ['--out-dir', str(out_dir)]) == 0
	assert (out_dir / 'support.txt').read_text().splitlines()[1] == '0 1 2 3 4'


def test_run_online_trials_without_common_range(tmp_path, capsys):
	argv = [
		'run', '--preset', 'fig4',
		'--m', '60', '--n', '10', '--k', '2', '--k-hat', '3', '--j', '1',
		'--online', '0.5,1,1,100,100', '--trials', '12', '--seed', '3', '--threads', '1', '-q',
		'-o', str(tmp_path / 'x.csv')
	]

	assert _exit_code(argv) == 1
	assert 'Cannot aggregate' in capsys.readouterr().err
