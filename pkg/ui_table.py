import importlib
import json
import logging
import os
from typing import Optional, Tuple
import pandas as pd
import gradio as gr
from config import get_display_rows
from utils.errors import CombError
from utils.macaulay import CHECK_FUNCTIONS
from utils.vectors import h_to_f
from ui_shared import as_gr_error, parse_vector_text

logger = logging.getLogger("calc")

VECTOR_COLUMN = "$h"
EXPECT_COLUMN = "期望结果"
STATS_COLUMNS = ["检验方式", "总数", "通过数", "通过率", "正确数", "正确率"]

def create_tab_table():
    """创建批量校验标签页的UI界面"""
    with gr.TabItem("批量校验", id="table"):
        with gr.Row():
            with gr.Column():
                checkers = gr.CheckboxGroup(
                    choices=[(v, k) for k, v in CHECK_FUNCTIONS.items()],
                    value=["check_sphere_g"],
                    label="检验方式（可多选）"
                )
            with gr.Column():
                file_upload = gr.File(label="上传表格文件 (CSV)，h 向量所在列名为 $h", file_types=[".csv"], height=100)
                use_example_btn = gr.Button("使用示例表格")

        submit_btn = gr.Button("提交", variant="primary")

        stats_table = gr.Dataframe(label="统计信息", headers=STATS_COLUMNS)
        output_table = gr.Dataframe(label="表格内容")
        download_file = gr.DownloadButton(label="下载表格")

        # 使用示例表格按钮事件
        use_example_btn.click(
            fn=lambda: "table_demo.csv",
            outputs=file_upload
        )

        submit_btn.click(
            fn=table_submit_handler,
            inputs=[file_upload, checkers],
            outputs=[stats_table, output_table, download_file]
        )

def parse_expected(value) -> Optional[bool]:
    """期望结果列：1/0、true/false、通过/失败；空白为 None"""
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return None
    text = str(value).strip().lower()
    if text in ("1", "1.0", "true", "yes", "通过", "是"):
        return True
    if text in ("0", "0.0", "false", "no", "失败", "否"):
        return False
    return None

def run_checker(checker: str, h):
    """按名称调用检验函数；f 向量检验先把 h 换算成 f"""
    module = importlib.import_module("utils.macaulay")
    check_func = getattr(module, checker, None)
    if check_func is None:
        raise gr.Error(f"未知的检验方式 {checker}")
    return check_func(h_to_f(h).entries if checker == "check_f_vector" else h)

def table_submit_handler(file, checkers, progress=gr.Progress()) -> Tuple[pd.DataFrame, dict, Optional[str]]:
    # 输入验证
    if file is None:
        raise gr.Error("请上传表格文件")
    if not checkers:
        raise gr.Error("请至少选择一种检验方式")

    file_path = file.name if hasattr(file, 'name') else str(file)
    if not file_path.endswith('.csv'):
        raise gr.Error("不支持的文件格式，请上传CSV文件")
    df = pd.read_csv(file_path, dtype=str)
    if VECTOR_COLUMN not in df.columns:
        raise gr.Error(f"表格中缺少 {VECTOR_COLUMN} 列")

    # 解析每一行的 h 向量，解析失败的行记录错误
    vectors, errors = [], []
    for text in df[VECTOR_COLUMN].fillna(""):
        try:
            vectors.append(parse_vector_text(text))
            errors.append("")
        except CombError as e:
            vectors.append(None)
            errors.append(str(e))
    df["解析错误"] = errors

    has_expected = EXPECT_COLUMN in df.columns
    expected = [parse_expected(v) for v in df[EXPECT_COLUMN]] if has_expected else []

    stats_data = []
    for checker in progress.tqdm(checkers, desc="检验中"):
        label = CHECK_FUNCTIONS[checker]
        verdicts, reasons = [], []
        for h in vectors:
            if h is None:
                verdicts.append(None)
                reasons.append("")
                continue
            try:
                result = run_checker(checker, h)
            except CombError as e:
                raise as_gr_error(e)
            verdicts.append(result.ok)
            reasons.append(result.reason)
        df[f"{label}结果"] = [None if v is None else int(v) for v in verdicts]
        df[f"{label}原因"] = reasons

        # 计算通过率与正确率
        total = sum(1 for v in verdicts if v is not None)
        passed = sum(1 for v in verdicts if v)
        correct, judged = 0, 0
        if has_expected:
            pairs = [(v, e) for v, e in zip(verdicts, expected) if v is not None and e is not None]
            judged = len(pairs)
            correct = sum(1 for v, e in pairs if v == e)
        stats_data.append([
            label,
            total,
            passed,
            f"{round(passed / total * 100, 1)}%" if total else "-",
            correct if has_expected else "-",
            f"{round(correct / judged * 100, 1)}%" if judged else "-",
        ])
        logger.info(json.dumps({"batch": checker, "total": total, "passed": passed, "correct": correct},
                               ensure_ascii=False))

    stats_df = pd.DataFrame(stats_data, columns=STATS_COLUMNS)

    # 保存结果
    os.makedirs("runtime", exist_ok=True)
    result_file = "runtime/result.csv"
    df.to_csv(result_file, index=False)

    # 限制显示的数据量
    display_df = df.head(get_display_rows())
    total_rows = len(df)
    display_rows = len(display_df)
    label_text = f"表格内容（📊 总数据量：{total_rows} 条，当前显示：{display_rows} 条，更多请下载表格）" if total_rows > display_rows else "表格内容"

    # 设置列宽：结果列120，其他列250
    column_widths = [120 if col.endswith("结果") else 250 for col in display_df.columns]

    return stats_df, gr.update(value=display_df, label=label_text, column_widths=column_widths), result_file
