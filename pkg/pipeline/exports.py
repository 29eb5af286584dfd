import csv
import logging
import os
import re

import openpyxl
from reportlab.lib.pagesizes import A4
from reportlab.pdfgen import canvas

from analise_temas.exceptions import ArgumentError

from .compare import check_run_dir

logger = logging.getLogger(__name__)

EXPORT_FORMATS = ('pdf', 'xlsx')
NUMBER = re.compile(r'-?\d+(\.\d+)?')


def _read_csv(path):
    with open(path, encoding='utf-8', newline='') as handle:
        return list(csv.reader(handle))


def _read_lines(path):
    with open(path, encoding='utf-8') as handle:
        return handle.read().splitlines()


def run_tables(run_dir):
    check_run_dir(run_dir)
    components = os.path.join(run_dir, 'components.csv')
    return {
        'report': _read_lines(os.path.join(run_dir, 'report.txt')),
        'components': _read_csv(components) if os.path.isfile(components) else [],
        'geo': _read_csv(os.path.join(run_dir, 'geo.csv')),
    }


def export_pdf(run_dir, path):
    tables = run_tables(run_dir)
    # invariant=1 fixa a data de criação e o id do documento.
    p = canvas.Canvas(str(path), pagesize=A4, invariant=1)
    width, height = A4
    y = height - 60

    def line(text, font='Helvetica', size=10, step=14):
        nonlocal y
        if y < 60:
            p.showPage()
            y = height - 60
        p.setFont(font, size)
        p.drawString(50, y, text)
        y -= step

    line(tables['report'][0] if tables['report'] else 'Relatório de execução', 'Helvetica-Bold', 16, 26)
    for text in tables['report'][1:]:
        line(text, 'Courier', 9, 12)

    y -= 10
    line('Componentes', 'Helvetica-Bold', 12, 18)
    for row in tables['components'][1:]:
        line(f"{row[0]} ({row[1]}%): {', '.join(w for w in row[2:] if w)}")

    y -= 10
    line('Geografia', 'Helvetica-Bold', 12, 18)
    for country, tweets, users in tables['geo'][1:]:
        line(f'{country}: {tweets}% tweets, {users}% utilizadores')

    p.showPage()
    p.save()
    logger.info("PDF exportado para %s", path)


def export_xlsx(run_dir, path):
    tables = run_tables(run_dir)
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = 'Relatório'
    for index, text in enumerate(tables['report'], start=1):
        ws[f'A{index}'] = text

    for title, rows in (('Componentes', tables['components']), ('Geografia', tables['geo'])):
        sheet = wb.create_sheet(title)
        for row in rows:
            sheet.append([_cell(value) for value in row])

    wb.save(str(path))
    logger.info("Excel exportado para %s", path)


def _cell(value):
    return float(value) if NUMBER.fullmatch(value) else value


def export_report(run_dir, path, fmt):
    if fmt == 'pdf':
        export_pdf(run_dir, path)
    elif fmt == 'xlsx':
        export_xlsx(run_dir, path)
    else:
        raise ArgumentError(f"Formato de exportação desconhecido: {fmt}")
