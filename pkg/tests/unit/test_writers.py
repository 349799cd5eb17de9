"""
결과 파일 쓰기 테스트
"""

import json

import numpy as np
import pandas as pd
import sys
import os

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', '..', 'src'))

from report import dumps, to_jsonable, write_csv, write_json, write_profile_svg


class TestJson:
    """to_jsonable, dumps, write_json"""

    def test_non_finite_become_null(self):
        data = to_jsonable({'a': float('nan'), 'b': np.inf, 'c': np.float64(1.5)})
        assert data == {'a': None, 'b': None, 'c': 1.5}

    def test_numpy_types(self):
        data = to_jsonable({'arr': np.array([1.0, 2.0]), 'flag': np.bool_(True), 'n': np.int64(3), 't': (1, 2)})
        assert data == {'arr': [1.0, 2.0], 'flag': True, 'n': 3, 't': [1, 2]}
        assert type(data['n']) is int

    def test_sorted_keys(self):
        text = dumps({'b': 1, 'a': {'d': 2, 'c': 3}})
        assert text.index('"a"') < text.index('"b"')
        assert text.index('"c"') < text.index('"d"')
        assert text.endswith("\n")

    def test_write_json_with_config(self, out_dir):
        path = write_json(os.path.join(out_dir, 'sub', 'speed.json'), {'c_star': 2.0}, {'seed': 0})
        with open(path, encoding='utf-8') as f:
            body = json.load(f)
        assert body == {'c_star': 2.0, 'config': {'seed': 0}}

    def test_byte_identical(self, out_dir):
        payload = {'x': [0.1, 0.2], 'y': float('nan')}
        a = write_json(os.path.join(out_dir, 'a.json'), payload)
        b = write_json(os.path.join(out_dir, 'b.json'), payload)
        with open(a, 'rb') as fa, open(b, 'rb') as fb:
            assert fa.read() == fb.read()


class TestCsv:
    """write_csv"""

    def test_full_precision(self, out_dir):
        frame = pd.DataFrame({'t': [0.1, 1.0 / 3.0], 'phi': [1e-300, 0.5]})
        path = write_csv(os.path.join(out_dir, 'profile.csv'), frame)
        with open(path, encoding='utf-8') as f:
            lines = f.read().splitlines()
        assert lines[0] == 't,phi'
        assert lines[1].startswith('0.10000000000000001,')
        assert float(lines[1].split(',')[1]) == 1e-300
        assert float(lines[2].split(',')[0]) == 1.0 / 3.0

    def test_missing_column_values(self, out_dir):
        frame = pd.DataFrame({'t': [0.0], 'dphi': [None]})
        path = write_csv(os.path.join(out_dir, 'gap.csv'), frame)
        with open(path, encoding='utf-8') as f:
            assert f.read().splitlines()[1] == '0,'


class TestSvg:
    """write_profile_svg"""

    def test_deterministic(self, out_dir, kpp_solution):
        a = write_profile_svg(os.path.join(out_dir, 'a.svg'), kpp_solution)
        b = write_profile_svg(os.path.join(out_dir, 'b.svg'), kpp_solution)
        with open(a, 'rb') as fa, open(b, 'rb') as fb:
            content = fa.read()
            assert content == fb.read()
        assert b'<svg' in content
