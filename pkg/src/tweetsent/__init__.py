"""Tweet sentiment classification toolkit.

Two classifiers over the same corpus pipeline: a TF-IDF + logistic
regression baseline and a two-layer bidirectional LSTM trained with Adam,
plus evaluation metrics, learning curves, binary model artifacts, a CLI,
and an HTTP inference service.
"""

__version__ = "0.1.0"
