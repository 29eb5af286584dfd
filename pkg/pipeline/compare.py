"""Comparação lado a lado de duas execuções."""
import csv
import logging
import os
from pathlib import Path

from analise_temas.exceptions import IncompleteRunError
from factor.model import read_model_json
from geoloc.tables import read_geo_csv
from themes.reports import (
    comparison_table, read_component_reports, render_comparison_text, write_comparison_csv,
)

from .runner import REQUIRED_OUTPUTS

logger = logging.getLogger(__name__)


def check_run_dir(folder):
    if not os.path.isdir(folder):
        raise IncompleteRunError(f"Diretório de execução inexistente: {folder}")
    for name in REQUIRED_OUTPUTS:
        if not os.path.isfile(os.path.join(folder, name)):
            raise IncompleteRunError(f"Execução incompleta em {folder}: falta {name}")


def run_names(meta_a, meta_b):
    a = meta_a.get('language') or 'A'
    b = meta_b.get('language') or 'B'
    if a == b:
        return f'{a}_a', f'{b}_b'
    return a, b


def _write_rows(path, rows):
    with open(path, 'w', encoding='utf-8', newline='') as handle:
        csv.writer(handle, lineterminator='\n').writerows(rows)


def stage_rows(meta_a, meta_b, names):
    stages_a = {name: (t, u) for name, t, u in meta_a.get('stages', [])}
    stages_b = {name: (t, u) for name, t, u in meta_b.get('stages', [])}
    order = [name for name, _, _ in meta_a.get('stages', [])]
    order += [name for name, _, _ in meta_b.get('stages', []) if name not in stages_a]
    rows = [['stage', f'{names[0]}_tweets', f'{names[0]}_users', f'{names[1]}_tweets', f'{names[1]}_users']]
    for name in order:
        left = stages_a.get(name, ('', ''))
        right = stages_b.get(name, ('', ''))
        rows.append([name, *map(str, left), *map(str, right)])
    return rows


def geo_rows(rows_a, rows_b, names):
    geo_a = {row[0]: row[1:3] for row in rows_a}
    geo_b = {row[0]: row[1:3] for row in rows_b}
    countries = [row[0] for row in rows_a] + [row[0] for row in rows_b if row[0] not in geo_a]
    rows = [['country', f'{names[0]}_% tweets', f'{names[0]}_% users', f'{names[1]}_% tweets', f'{names[1]}_% users']]
    for country in countries:
        rows.append([country, *geo_a.get(country, ['', '']), *geo_b.get(country, ['', ''])])
    return rows


def compare_runs(dir_a, dir_b, output_dir):
    check_run_dir(dir_a)
    check_run_dir(dir_b)
    meta_a = read_model_json(os.path.join(dir_a, 'factor_model.json'))
    meta_b = read_model_json(os.path.join(dir_b, 'factor_model.json'))
    names = run_names(meta_a, meta_b)

    table = comparison_table(
        read_component_reports(os.path.join(dir_a, 'components.json')),
        read_component_reports(os.path.join(dir_b, 'components.json')),
    )
    output = Path(output_dir)
    output.mkdir(parents=True, exist_ok=True)
    write_comparison_csv(table, output / 'comparison.csv', names)
    with open(output / 'comparison.txt', 'w', encoding='utf-8', newline='\n') as handle:
        handle.write(render_comparison_text(table, names))
    _write_rows(output / 'stages_comparison.csv', stage_rows(meta_a, meta_b, names))
    _write_rows(
        output / 'geo_comparison.csv',
        geo_rows(read_geo_csv(os.path.join(dir_a, 'geo.csv')), read_geo_csv(os.path.join(dir_b, 'geo.csv')), names),
    )
    logger.info("Comparação %s x %s: %d linhas em %s", names[0], names[1], len(table), output)
    return table, names
