# Regenerates two-page.pdf: python3 make_pdf.py
from reportlab.lib.pagesizes import letter
from reportlab.pdfgen import canvas

PAGES = [
    ["A Two Page Test Document",
     "The first page describes an autoregressive model whose efficient decoder",
     "reuses cached keys and values from previous steps."],
    ["The second page carries the sentinel.",
     "Sentinel: the quick autoregressive fox predicts the lazy dog.",
     "We train for 12 epochs with a learning rate of 0.001."],
]

c = canvas.Canvas("two-page.pdf", pagesize=letter, invariant=1)
for lines in PAGES:
    text = c.beginText(72, 720)
    text.setFont("Helvetica", 11)
    for line in lines:
        text.textLine(line)
    c.drawText(text)
    c.showPage()
c.save()
