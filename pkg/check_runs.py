#!/usr/bin/env python3
"""실행 기록 DB 확인"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from database.connection import Database
from database.queries import RunQueries

def main():
    db = Database()
    db.create_tables()
    with db.get_session() as session:
        runs = RunQueries.get_recent_runs(session, limit=50)

        print(f"\n최근 {len(runs)}개 실행이 저장되어 있습니다.\n")

        if runs:
            print("실행 목록:")
            print("-" * 60)
            for run in runs[:20]:  # 처음 20개만
                print(f"{run.id:5d} {run.command:8s} {run.model:14s} {run.status:18s} {run.exit_code}")

            if len(runs) > 20:
                print(f"\n... 외 {len(runs) - 20}개 실행")

            failed = RunQueries.get_failed_hypotheses(session)
            if failed:
                print(f"\n실패한 가설 {len(failed)}건:")
                for record in failed[:10]:
                    print(f"  run {record.run_id}: ({record.name}) seed={record.seed}")
        else:
            print("저장된 실행이 없습니다.")
            print("\n예시 실행 기록:")
            print("uv run semiwave verify --model kpp --h 1 --record")

if __name__ == "__main__":
    main()
