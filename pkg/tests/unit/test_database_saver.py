"""
RunSaver 클래스 테스트
"""

import json

import pytest
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from database.saver import RunSaver
from models import HypothesisRecord, ProfileRecord, RunRecord, SpeedRecord


@pytest.fixture
def saver(db_session):
    return RunSaver(db_session)


@pytest.fixture
def saved_run(saver):
    return saver.save_run(
        command='verify', model='kpp', config={'seed': 0, 'samples': 100},
        config_hash='f' * 64, status='ok', exit_code=0,
    )


class TestRunSaver:
    """RunSaver 클래스 테스트"""

    def test_save_run(self, db_session, saved_run):
        assert saved_run.id is not None
        stored = db_session.query(RunRecord).one()
        assert json.loads(stored.config_json) == {'samples': 100, 'seed': 0}
        assert stored.status == 'ok'

    def test_save_speed(self, db_session, saver, saved_run):
        analysis = {'c': 2.5, 'c_star': 2.0, 'lambda_star': 1.0, 'lambda1': 0.5, 'lambda2': 2.0,
                    'critical': False, 'dominance_ok': True}
        record = saver.save_speed(saved_run.id, analysis)
        assert record.lambda2 == 2.0
        assert db_session.query(SpeedRecord).count() == 1

    def test_save_speed_duplicate_skipped(self, db_session, saver, saved_run):
        """run_id 당 한 건 (중복은 None)"""
        analysis = {'c': 1.5, 'c_star': 2.0, 'lambda_star': 1.0}
        assert saver.save_speed(saved_run.id, analysis) is not None
        assert saver.save_speed(saved_run.id, analysis) is None
        assert db_session.query(SpeedRecord).count() == 1

    def test_save_profile(self, db_session, saver, saved_run, kpp_solution):
        summary = kpp_solution.summary()
        summary['decay'] = {'rate': 0.5, 'mode': 'pure'}
        summary['oscillatory'] = False
        record = saver.save_profile(saved_run.id, summary)
        assert record.converged is True
        assert record.step == pytest.approx(kpp_solution.step)
        assert record.decay_mode == 'pure'
        assert db_session.query(ProfileRecord).count() == 1

    def test_save_hypotheses(self, db_session, saver, saved_run):
        results = [
            {'name': 'UB', 'passed': False, 'counterexample': {'phi': [0.1]}, 'n_samples': 100, 'seed': 0},
            {'name': 'LB', 'passed': True, 'counterexample': None, 'n_samples': 100, 'seed': 0},
        ]
        assert saver.save_hypotheses(saved_run.id, results) == 2
        ub = db_session.query(HypothesisRecord).filter_by(name='UB').one()
        assert json.loads(ub.counterexample_json) == {'phi': [0.1]}

    def test_save_hypotheses_duplicate(self, saver, saved_run):
        results = [{'name': 'M', 'passed': True}]
        assert saver.save_hypotheses(saved_run.id, results) == 1
        assert saver.save_hypotheses(saved_run.id, results) == 0
