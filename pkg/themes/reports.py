import csv
import json
import logging
from dataclasses import dataclass

from analise_temas.exceptions import ArgumentError, DataError
from factor.extraction import select_terms

from .scoring import score_documents, top_documents

logger = logging.getLogger(__name__)

WORD_COLUMNS = 7
LABEL_PREFIXES = {'es': 'S', 'en': 'E'}


@dataclass(frozen=True)
class ComponentReport:
    component_id: str
    pe: float
    terms: tuple = ()
    negative_terms: tuple = ()
    top_docs: tuple = ()

    @property
    def is_empty(self):
        return not self.terms

    def preview(self, size=WORD_COLUMNS):
        return [term for term, _ in self.terms[:size]]


@dataclass(frozen=True)
class ComparisonRow:
    rank: int
    left: ComponentReport = None
    right: ComponentReport = None


def label_prefix(language, override=None):
    if override:
        return override
    return LABEL_PREFIXES.get(language, language[:1].upper())


def build_component_reports(model, matrix, texts, threshold=0.1, top_k=30, prefix='S'):
    reports = []
    selected = select_terms(model.loadings, model.terms, threshold)
    for index, (positive, negative) in enumerate(selected):
        label = f'{prefix}{index + 1}'
        if not positive:
            logger.warning("Componente %s sem termos acima de %.3f", label, threshold)
        ranked = top_documents(score_documents(matrix, model.component(index)), top_k)
        reports.append(ComponentReport(
            component_id=label,
            pe=float(model.pe[index]),
            terms=tuple(positive),
            negative_terms=tuple(negative),
            top_docs=tuple((doc_id, score, texts.get(doc_id, '')) for doc_id, score in ranked),
        ))
    return reports


def write_components_csv(reports, path):
    # id, PE% e as sete primeiras palavras.
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(['id', 'PE%', *(f'word{i}' for i in range(1, WORD_COLUMNS + 1))])
        for report in reports:
            words = report.preview()
            writer.writerow([report.component_id, f'{report.pe:.1f}', *words, *([''] * (WORD_COLUMNS - len(words)))])


def write_components_json(reports, path):
    payload = [
        {
            'id': report.component_id,
            'pe': round(report.pe, 6),
            'empty': report.is_empty,
            'terms': [{'term': t, 'loading': round(v, 6)} for t, v in report.terms],
            'negative_terms': [{'term': t, 'loading': round(v, 6)} for t, v in report.negative_terms],
            'top_docs': [
                {'doc_id': d, 'score': round(s, 6), 'text': text} for d, s, text in report.top_docs
            ],
        }
        for report in reports
    ]
    with open(path, 'w', encoding='utf-8', newline='\n') as handle:
        json.dump(payload, handle, indent=2, sort_keys=True, ensure_ascii=False)
        handle.write('\n')


def read_component_reports(path):
    try:
        with open(path, encoding='utf-8') as handle:
            payload = json.load(handle)
        return [
            ComponentReport(
                component_id=item['id'],
                pe=float(item['pe']),
                terms=tuple((t['term'], float(t['loading'])) for t in item['terms']),
                negative_terms=tuple((t['term'], float(t['loading'])) for t in item.get('negative_terms', [])),
                top_docs=tuple((d['doc_id'], float(d['score']), d.get('text', '')) for d in item.get('top_docs', [])),
            )
            for item in payload
        ]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise DataError(f"Relatório de componentes ilegível em {path}: {exc}") from exc


def comparison_table(reports_a, reports_b):
    # Emparelha por posição (PE decrescente); o lado mais curto é preenchido.
    if not reports_a or not reports_b:
        raise ArgumentError("Ambas as listas de componentes têm de ser não vazias")
    left = sorted(reports_a, key=lambda r: -r.pe)
    right = sorted(reports_b, key=lambda r: -r.pe)
    size = max(len(left), len(right))
    return [
        ComparisonRow(
            rank=rank + 1,
            left=left[rank] if rank < len(left) else None,
            right=right[rank] if rank < len(right) else None,
        )
        for rank in range(size)
    ]


def _cells(report):
    if report is None:
        return ['', '', '']
    return [report.component_id, f'{report.pe:.1f}', ', '.join(report.preview())]


def comparison_rows(table, names=('A', 'B')):
    header = ['rank']
    for name in names:
        header += [f'{name}_id', f'{name}_PE%', f'{name}_terms']
    return [header] + [[str(row.rank), *_cells(row.left), *_cells(row.right)] for row in table]


def write_comparison_csv(table, path, names=('A', 'B')):
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        csv.writer(handle, lineterminator='\n').writerows(comparison_rows(table, names))


def render_comparison_text(table, names=('A', 'B')):
    rows = comparison_rows(table, names)
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ['  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
    return '\n'.join(lines) + '\n'
