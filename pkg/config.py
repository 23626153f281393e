import os
import yaml
from typing import Dict, Any

CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'algcomb.yaml')

# 命令行参数对枚举上限的覆盖
_GUARD_OVERRIDES: Dict[str, int] = {}

# 加载配置文件
def load_config():
    """加载配置文件"""
    with open(CONFIG_FILE, 'r', encoding='utf-8') as f:
        return yaml.safe_load(f)

def get_guards() -> Dict[str, int]:
    """获取枚举规模上限"""
    config = load_config()
    return {key: int(value) for key, value in config['guards'].items()}

def get_guard(name: str) -> int:
    """获取单个枚举上限，例如 'motzkin_max_n'"""
    if name in _GUARD_OVERRIDES:
        return _GUARD_OVERRIDES[name]
    return get_guards()[name]

def override_guard(name: str, value: int):
    """覆盖枚举上限（例如 --guard-faces），value 必须为正"""
    if int(value) <= 0:
        raise ValueError(f"{name} 必须为正整数")
    _GUARD_OVERRIDES[name] = int(value)

def get_interval_config() -> Dict[str, Any]:
    """
    获取区间算术配置
    Returns:
        Dict[str, Any]: prec / max_prec 为整数位数，width_floor 为浮点数
    """
    section = load_config()['interval']
    return {
        'prec': int(section['prec']),
        'max_prec': int(section.get('max_prec', section['prec'] * 16)),
        'width_floor': float(section['width_floor']),
    }

def get_diagnostics_config() -> Dict[str, Any]:
    """获取有限维诊断阈值"""
    section = load_config()['diagnostics']
    return {
        'linear_factor': section.get('linear_factor', 4),
        'nontrivial_margin': section.get('nontrivial_margin', 10),
    }

def get_free_cap_factor() -> int:
    return int(load_config()['extension'].get('free_cap_factor', 1))

def get_table_max_digits() -> int:
    return int(load_config()['table'].get('max_digits', 30))

def get_display_rows() -> int:
    return int(load_config()['ui'].get('display_rows', 100))

def get_ui_config() -> Dict[str, Any]:
    """获取网页界面的监听地址、端口和日志回显行数"""
    section = load_config()['ui']
    return {
        'server_name': str(section.get('server_name', '0.0.0.0')),
        'server_port': int(section.get('server_port', 7860)),
        'log_tail': int(section.get('log_tail', 10)),
    }
