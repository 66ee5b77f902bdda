# Regenerates lstm-medium.pdf: python3 make_pdf.py
from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import getSampleStyleSheet
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer

BODY = [
    ("Title", "Medium-Sized LSTM Language Models Revisited"),
    ("Normal", "Ingrid Solberg and Rafael Mendes"),
    ("Normal", "2015"),
    ("Heading2", "Abstract"),
    ("Normal", "We retrain a word-level autoregressive LSTM language model of moderate size and report how "
               "sensitive it is to dropout and to the length of truncated backpropagation."),
    ("Heading2", "1 Introduction"),
    ("Normal", "Long short-term memory cells keep gradients alive over long spans (Hochreiter and Schmidhuber, 1997). "
               "Applying dropout only to non-recurrent connections made large recurrent language models "
               "trainable without overfitting (Zaremba et al., 2014)."),
    ("Heading2", "2 Experimental Setup"),
    ("Normal", "We use a 2-layer LSTM with 650 hidden units per layer. Dropout of 50% is applied to the outputs of "
               "every layer. Plain SGD starts from a learning rate of 20, which is divided by four whenever "
               "validation perplexity stalls. The batch size is 20 and we unroll for a BPTT of 35 words. "
               "Training stops after 39 epochs."),
    ("Heading2", "3 Results"),
    ("Normal", "The model reaches a test perplexity of 78.4 on Penn Treebank. Halving the dropout rate raises "
               "the validation perplexity noticeably, while longer unrolling changes little."),
    ("Heading2", "References"),
    ("Normal", "Hochreiter, S. and Schmidhuber, J. Long short-term memory. Neural Computation, 1997."),
    ("Normal", "Zaremba, W., Sutskever, I., and Vinyals, O. Recurrent neural network regularization. "
               "arXiv preprint, 2014."),
]

styles = getSampleStyleSheet()
story = []
for style, text in BODY:
    story.append(Paragraph(text, styles[style]))
    story.append(Spacer(1, 6))
SimpleDocTemplate("lstm-medium.pdf", pagesize=letter, invariant=1).build(story)
