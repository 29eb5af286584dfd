import numpy as np

from analise_temas.exceptions import ArgumentError


def score_documents(matrix, column):
    weights = np.maximum(np.asarray(column, dtype=np.float64), 0.0)
    if weights.shape != (matrix.cells.shape[1],):
        raise ArgumentError("Coluna de cargas não corresponde ao vocabulário da matriz")
    scores = matrix.cells @ weights
    return {doc_id: float(score) for doc_id, score in zip(matrix.doc_ids, scores)}


def top_documents(scores, top_k=30):
    if top_k < 1:
        raise ArgumentError(f"top_k deve ser >= 1 (recebido {top_k})")
    ranked = sorted(((d, s) for d, s in scores.items() if s > 0), key=lambda item: (-item[1], item[0]))
    return ranked[:top_k]
