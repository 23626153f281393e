import os
import sys
import logging
from collections import deque
import asyncio
from config import get_ui_config

LOG_PATH = "logs/calc.log"

def create_logger(verbose: bool = False):
    calc_logger = logging.getLogger("calc")
    if not any(isinstance(h, logging.FileHandler) for h in calc_logger.handlers):
        os.makedirs(os.path.dirname(LOG_PATH), exist_ok=True)
        calc_handler = logging.FileHandler(LOG_PATH, encoding="utf-8")
        calc_handler.setFormatter(logging.Formatter('%(asctime)s %(message)s\n'))
        calc_logger.addHandler(calc_handler)
    if verbose and not any(getattr(h, "stream", None) is sys.stderr for h in calc_logger.handlers):
        calc_logger.addHandler(logging.StreamHandler(sys.stderr))
    calc_logger.setLevel(logging.INFO)
    return calc_logger

async def read_logs():
    """日志框数据源：先回显最近 log_tail 行，再持续追加新写入的日志"""
    os.makedirs(os.path.dirname(LOG_PATH), exist_ok=True)
    open(LOG_PATH, "a").close()

    with open(LOG_PATH, "r", encoding="utf-8") as f:
        history = deque(f, maxlen=get_ui_config()['log_tail'])
        yield "".join(history) + "============接下来是新日志============\n"

        idle = 0
        while True:
            chunk = f.read()
            if chunk:
                idle = 0
                yield chunk
            else:
                idle += 1
                # 连接断开时只有 yield 才能结束生成器
                if idle >= 5:
                    yield ""
                    idle = 0
            await asyncio.sleep(1)
