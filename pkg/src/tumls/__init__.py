"""Two-level unsupervised segmentation for histology image pyramids.

The package is organized around the pipeline stages:

- :mod:`tumls.pyramid` -- multi-resolution pyramids and patch extraction
- :mod:`tumls.background` -- background patch filtering
- :mod:`tumls.ae` -- convolutional autoencoder (training and embedding)
- :mod:`tumls.clustering` -- tissue count selection, K-means, uncertainty
- :mod:`tumls.stain` -- stain normalization and hematoxylin recovery
- :mod:`tumls.nucseg` -- nucleus segmentation mask variants
- :mod:`tumls.features` -- cross-level texture and morphology features
- :mod:`tumls.evaluation` -- overlap metrics and the annotated-dataset harness
- :mod:`tumls.report` -- insight bundle rendering
- :mod:`tumls.cli` -- command line entry points
"""

__version__ = "0.1.0"

from tumls.errors import ConfigError, DataError, NumericError, TumlsError

__all__ = ["ConfigError", "DataError", "NumericError", "TumlsError", "__version__"]
