import json
import logging
import gradio as gr
from utils.complex import h_vector
from utils.errors import CombError, PreconditionError
from utils.link import analyze, triviality_diagnostics_from_h
from utils.macaulay import check_cm_h, check_f_vector, check_sphere_g
from utils.report import to_jsonable, to_table
from utils.vectors import dehn_sommerville_check, f_to_h, h_half_to_gamma, h_to_f, h_to_g
from ui_shared import as_gr_error, create_complex_inputs, create_vector_inputs, parse_vector_text, resolve_complex

logger = logging.getLogger("calc")

def create_tab_single():
    with gr.TabItem("单项计算", id="single"):
        # 左侧输入区域
        with gr.Row():
            with gr.Column():
                generator_selector, parameter_input, facets_input = create_complex_inputs()
            with gr.Column():
                vector_kind, vector_input = create_vector_inputs()
                with_link = gr.Checkbox(value=True, label="生成链接条件报告")

        # 提交按钮
        submit_btn = gr.Button("计算", variant="primary")

        # 输出
        with gr.Row():
            vector_table = gr.Dataframe(
                headers=["向量", "分量"],
                datatype=["str", "str"],
                col_count=(2, "fixed"),
                label="f / h / g / γ 向量"
            )
            check_json = gr.JSON(label="可实现性检验")
        link_status = gr.Markdown()
        link_table = gr.Dataframe(label="平坦性诊断", show_fullscreen_button=True)

        # 绑定提交事件
        submit_btn.click(
            fn=single_submit_handler,
            inputs=[generator_selector, parameter_input, facets_input, vector_kind, vector_input, with_link],
            outputs=[vector_table, check_json, link_status, link_table]
        )

def _resolve(generator, parameter, facets_text, vector_kind, vector_text):
    """返回 (复形或 None, h 向量)；向量输入优先"""
    if vector_text and vector_text.strip():
        values = parse_vector_text(vector_text)
        return None, list(f_to_h(values).entries if vector_kind == "f" else values)
    K = resolve_complex(generator, parameter, facets_text)
    if K is None:
        raise gr.Error("请选择生成器、填写面列表或输入向量")
    return K, list(h_vector(K).entries)

def single_submit_handler(generator, parameter, facets_text, vector_kind, vector_text, with_link):
    try:
        K, h = _resolve(generator, parameter, facets_text, vector_kind, vector_text)
        d = len(h) - 1
        rows = [
            ["f", h_to_f(h).entries],
            ["h", h],
            ["g（截断）", h_to_g(h, "trunc").entries],
            ["g（扩展）", h_to_g(h, "ext").entries],
        ]
        if dehn_sommerville_check(h):
            rows.append(["γ", h_half_to_gamma(h[:d // 2 + 1], d).entries])
        vector_df = to_table([{"向量": name, "分量": tuple(values)} for name, values in rows])
        checks = {
            "check_f_vector": check_f_vector(h_to_f(h).entries),
            "check_cm_h": check_cm_h(h),
            "check_sphere_g": check_sphere_g(h),
        }
        check_payload = to_jsonable(dict(checks, dehn_sommerville=dehn_sommerville_check(h)))
    except CombError as e:
        raise as_gr_error(e)

    if not with_link or d < 2:
        return vector_df, check_payload, "", None

    try:
        report = analyze(K) if K is not None else triviality_diagnostics_from_h(h)
    except PreconditionError as e:
        edges = ", ".join("{" + ", ".join(map(str, edge)) + "}" for edge in e.edges)
        logger.info(json.dumps({"event": "link_precondition", "edges": [list(edge) for edge in e.edges]},
                               ensure_ascii=False))
        return vector_df, check_payload, f"**链接条件不成立**：{edges}", None
    except CombError as e:
        raise as_gr_error(e)

    status = f"前提：`{report.premise}`　标签：{', '.join(report.tags) or '无'}"
    if K is not None:
        status += f"　恒等式：{'全部成立' if report.ok else '存在不成立项'}"
    return vector_df, check_payload, status, to_table(r for r in report.rows if "skipped" not in r)
