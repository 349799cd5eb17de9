"""
내장 모델 프리셋

여기에 프리셋을 추가/삭제할 수 있습니다.
형식: (모델 이름, 설명, 파라미터와 기본값)
"""

MODEL_PRESETS = [
    ("kpp", "지연 KPP-Fisher φ(0)(1 - φ(-h))", {"h": 1.0}),
    ("nicholson", "Nicholson 검정파리 -φ(0) + pφ(-h)e^{-φ(-h)}", {"h": 1.0, "p": 2.0}),
    ("may", "May 형 -φ(0) + pφ(-h)(1 - (φ(-h)/k)^z)", {"h": 1.0, "p": 2.0, "z": 2.0, "k": 1.0}),
    ("ub_violating", "(UB) 위반 합성 모델 u + u² - 2u³", {"h": 0.0}),
]


def preset_names():
    return [name for name, _, _ in MODEL_PRESETS]


def preset_params(name: str) -> dict:
    """프리셋 기본 파라미터 (없는 이름이면 ValueError)"""
    for preset, _, params in MODEL_PRESETS:
        if preset == name:
            return dict(params)
    raise ValueError(f"알 수 없는 모델: {name} (사용 가능: {', '.join(preset_names())}, custom)")
