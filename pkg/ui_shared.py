import gradio as gr
from utils.complex import GENERATOR_LABELS, generate, parse_facets
from utils.errors import CombError, ParseError

def parse_vector_text(text: str):
    """把 "1,4,6,4,1" 解析为整数列表，解析失败抛出 ParseError"""
    values = []
    for position, token in enumerate((text or "").replace('，', ',').split(',')):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(int(token))
        except ValueError:
            raise ParseError(f"'{token}' 不是整数", position=position)
    if not values:
        raise ParseError("向量为空")
    return values

def resolve_complex(generator, parameter, facets_text):
    """面列表优先，否则按生成器构造复形"""
    if facets_text and facets_text.strip():
        return parse_facets(facets_text)
    if not generator:
        return None
    return generate(f"{generator}:{int(parameter)}")

def as_gr_error(e: CombError) -> gr.Error:
    return gr.Error(f"{type(e).__name__}: {e}")

def create_complex_inputs(generator="cross", parameter=4):
    """创建复形输入区域：生成器 + 参数，或直接粘贴面列表"""
    with gr.Row():
        generator_selector = gr.Dropdown(
            choices=[("不使用", "")] + [(v, k) for k, v in GENERATOR_LABELS.items()],
            value=generator,
            label="生成器"
        )
        parameter_input = gr.Number(value=parameter, precision=0, minimum=1, label="参数")
    facets_input = gr.Textbox(
        label="面列表（每行一个面，空白分隔，# 为注释；填写后忽略生成器）",
        lines=6,
        placeholder="0 1 2\n0 2 3\n..."
    )
    return generator_selector, parameter_input, facets_input

def create_vector_inputs():
    with gr.Row():
        vector_kind = gr.Radio(choices=[("h向量", "h"), ("f向量", "f")], value="h", label="向量类型")
    vector_input = gr.Textbox(label="向量（逗号分隔，填写后忽略复形）", lines=1, placeholder="1,4,6,4,1")
    return vector_kind, vector_input
