import gradio as gr
from config import get_ui_config
from ui_single import create_tab_single
from ui_table import create_tab_table
from utils.log import read_logs, create_logger

INTRO = """### 单纯球面组合计算器
选择生成器、粘贴面列表或直接输入 h/f 向量，计算 f/h/g/γ 向量并做可实现性检验；
批量校验页按 `$h` 列逐行检验上传的 CSV。所有计数均为精确整数/有理数运算。"""

def build_app() -> gr.Blocks:
    with gr.Blocks(title="单纯球面组合计算器", theme=gr.themes.Default(spacing_size="sm")) as demo:
        gr.Markdown(INTRO)
        with gr.Tabs(selected="single"):
            create_tab_single()
            create_tab_table()

        # 日志 使用tmplogbox接收服务端日志后，通过js添加到logbox
        clear_btn = gr.Button("清空日志")
        logbox = gr.Textbox(label="计算日志", lines=10, interactive=False, elem_id="logbox")
        tmplogbox = gr.Textbox(visible=False, interactive=False, value=read_logs)
        tmplogbox.change(fn=None, inputs=[logbox, tmplogbox], outputs=logbox, js="(a, b) => a + b")
        clear_btn.click(fn=None, inputs=[logbox], outputs=logbox, js="() => ''")
    return demo

def main():
    create_logger()
    ui = get_ui_config()
    demo = build_app()

    print(f"* 点击打开URL http://127.0.0.1:{ui['server_port']}")
    demo.queue().launch(server_name=ui['server_name'], server_port=ui['server_port'])

if __name__ == "__main__":
    main()
