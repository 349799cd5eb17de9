"""
RunQueries 클래스 테스트
"""

import pytest
from datetime import datetime, timedelta
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from database.queries import RunQueries
from models import HypothesisRecord, ProfileRecord, RunRecord, SpeedRecord


@pytest.fixture
def sample_runs(db_session):
    """실행 3건과 딸린 기록"""
    base = datetime(2026, 1, 1, 12, 0, 0)
    runs = [
        RunRecord(command='speed', model='kpp', config_json='{}', config_hash='a' * 64,
                  status='ok', exit_code=0, created_at=base),
        RunRecord(command='profile', model='kpp', config_json='{}', config_hash='b' * 64,
                  status='not_converged', exit_code=4, created_at=base + timedelta(days=1)),
        RunRecord(command='verify', model='nicholson', config_json='{}', config_hash='c' * 64,
                  status='hypothesis_failed', exit_code=5, created_at=base + timedelta(days=2)),
    ]
    db_session.add_all(runs)
    db_session.commit()

    db_session.add(SpeedRecord(run_id=runs[0].id, c=2.5, c_star=2.0, lambda_star=1.0,
                               lambda1=0.5, lambda2=2.0, critical=False, dominance_ok=True))
    db_session.add(ProfileRecord(run_id=runs[1].id, c=2.5, step=0.02, t_min=-80.0, t_max=40.0,
                                 residual=1e-3, iterations=20000, converged=False))
    db_session.add_all([
        HypothesisRecord(run_id=runs[2].id, name='UB', passed=False, counterexample_json='{}'),
        HypothesisRecord(run_id=runs[2].id, name='LB', passed=True),
    ])
    db_session.commit()
    return runs


class TestRunQueries:
    """RunQueries 클래스 테스트"""

    def test_get_run(self, db_session, sample_runs):
        result = RunQueries.get_run(db_session, sample_runs[0].id)
        assert result.command == 'speed'

    def test_get_run_not_exists(self, db_session):
        assert RunQueries.get_run(db_session, 999) is None

    def test_recent_runs_newest_first(self, db_session, sample_runs):
        result = RunQueries.get_recent_runs(db_session, limit=2)
        assert [r.command for r in result] == ['verify', 'profile']

    def test_runs_by_model(self, db_session, sample_runs):
        assert len(RunQueries.get_runs_by_model(db_session, 'kpp')) == 2
        result = RunQueries.get_runs_by_model(db_session, 'kpp', command='profile')
        assert [r.exit_code for r in result] == [4]

    def test_get_speed(self, db_session, sample_runs):
        speed = RunQueries.get_speed(db_session, sample_runs[0].id)
        assert speed.c_star == 2.0
        assert RunQueries.get_speed(db_session, sample_runs[1].id) is None

    def test_get_profiles(self, db_session, sample_runs):
        assert len(RunQueries.get_profiles(db_session, model='kpp')) == 1
        assert RunQueries.get_profiles(db_session, converged=True) == []
        assert RunQueries.get_profiles(db_session, model='nicholson') == []

    def test_hypotheses(self, db_session, sample_runs):
        names = [h.name for h in RunQueries.get_hypotheses(db_session, sample_runs[2].id)]
        assert names == ['UB', 'LB']
        failed = RunQueries.get_failed_hypotheses(db_session)
        assert [h.name for h in failed] == ['UB']
        assert RunQueries.get_failed_hypotheses(db_session, model='kpp') == []

    def test_delete_runs_before(self, db_session, sample_runs):
        """기준일 이전 실행과 딸린 기록 삭제"""
        deleted = RunQueries.delete_runs_before(db_session, datetime(2026, 1, 2, 18, 0, 0))
        assert deleted == 2
        assert db_session.query(RunRecord).count() == 1
        assert db_session.query(SpeedRecord).count() == 0
        assert db_session.query(ProfileRecord).count() == 0
        assert db_session.query(HypothesisRecord).count() == 2

    def test_delete_nothing(self, db_session, sample_runs):
        assert RunQueries.delete_runs_before(db_session, datetime(2000, 1, 1)) == 0
