# -*- coding: utf-8 -*-
from __future__ import absolute_import, division, unicode_literals
import csv
import io
import logging
import os

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt

from sparse_factor_tools.exceptions import OutputError
from sparse_factor_tools.utils import format_float

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ['gamma', 'lambda', 'trial', 'method', 'mse', 'outer_iters', 'runtime_ms', 'converged']
SUMMARY_COLUMNS = ['gamma', 'method', 'best_lambda', 'mean_mse', 'stderr_mse']
MARKERS = ['s', 'D', 'o', '^', 'v', 'x']


def result_record(row):
    return [format_float(row.gamma), format_float(row.lam), str(row.trial), row.method,
            format_float(row.mse), str(row.outer_iters), str(row.runtime_ms),
            'true' if row.converged else 'false']

def summary_record(row):
    return [format_float(row.gamma), row.method, format_float(row.best_lambda),
            format_float(row.mean_mse), format_float(row.stderr_mse)]


def write_csv(path, columns, records):
    with io.open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        writer.writerows(records)
    logger.info("wrote %s", path)


def plot_summary(path, summary, title=None):
    """
    Log-log plot of mean MSE against sampling rate, one marker per method.
    """
    methods = []
    for row in summary:
        if row.method not in methods:
            methods.append(row.method)

    with matplotlib.rc_context({'svg.fonttype': 'none', 'svg.hashsalt': 'sparse-factor-tools'}):
        fig, ax = plt.subplots(figsize=(5, 4))
        try:
            for index, method in enumerate(methods):
                points = sorted((row.gamma, row.mean_mse) for row in summary
                                if row.method == method and row.mean_mse > 0)
                if not points:
                    continue
                gammas, errors = zip(*points)
                ax.loglog(gammas, errors, marker=MARKERS[index % len(MARKERS)], label=method)
            ax.set_xlabel('sampling rate')
            ax.set_ylabel('per-element MSE')
            if title:
                ax.set_title(title)
            ax.legend()
            fig.savefig(path, format='svg', metadata={'Date': None})
        finally:
            plt.close(fig)
    logger.info("wrote %s", path)


def emit_outputs(rows, summary, output_dir, likelihood='results'):
    """
    Writes ``results.csv``, ``summary.csv`` and, when the summary is not
    empty, ``<likelihood>.svg`` into ``output_dir``. Returns the paths written.
    """
    try:
        if not os.path.isdir(output_dir):
            os.makedirs(output_dir)
        paths = [os.path.join(output_dir, 'results.csv'), os.path.join(output_dir, 'summary.csv')]
        write_csv(paths[0], RESULT_COLUMNS, [result_record(row) for row in rows])
        write_csv(paths[1], SUMMARY_COLUMNS, [summary_record(row) for row in summary])
        if summary:
            paths.append(os.path.join(output_dir, '%s.svg' % likelihood))
            plot_summary(paths[-1], summary, title=likelihood)
    except (IOError, OSError) as e:
        raise OutputError("cannot write outputs to %s: %s" % (output_dir, e))
    return paths
