import click

import sys
import logging
import json

from urtest.bandwidth import default_candidates, parse_candidates
from urtest.bootstrap import BootstrapConfig, mv_select_bandwidth, run_bootstrap
from urtest.config import (bootstrap_defaults, experiment_defaults, load_config,
    thread_count)
from urtest.exceptions import ConfigurationError
from urtest.ioutil import read_series_csv, write_rejection_table
from urtest.montecarlo import ExperimentSpec, run_size_experiment, size_corrected_power
from urtest.series import ObservedSeries, TrendSpec


# command group for all urtest commands.
@click.group(help='Bootstrap unit root tests and Monte Carlo studies.')
@click.version_option()
@click.option(
    '-v', '--verbose', is_flag=True, default=False,
    help='Log progress and debugging information to stderr.'
)
def main(verbose):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s'
    )


_logger = logging.getLogger(__name__)


def _exit_code(error):
    """Exit code of an error. Unexpected errors exit with 1."""
    return getattr(error, 'exit_code', 1)


def _bootstrap_config(cfg, method, replications, bandwidth, kernel, seed, **extra):
    """BootstrapConfig from the config file overridden by command line flags."""
    data = bootstrap_defaults(cfg)
    overrides = {
        'method': method, 'B': replications, 'l': bandwidth, 'kernel': kernel,
        'seed': seed
    }
    overrides.update(extra)
    data.update({k: v for k, v in overrides.items() if v is not None})
    return BootstrapConfig.from_dict(data)


def _check_alpha(alpha):
    if not 0 < alpha <= 1:
        raise ConfigurationError('alpha must be in (0, 1]. Got %s.' % alpha)
    return alpha


_METHODS = click.Choice(['dwb', 'rwb', 'rdwb'], case_sensitive=False)
_KERNELS = click.Choice(['bartlett', 'parzen'], case_sensitive=False)


@main.command('test')
@click.argument(
    'input-file', type=click.Path(exists=True, dir_okay=False, resolve_path=True)
)
@click.option(
    '-m', '--method', type=_METHODS, default=None,
    help='Bootstrap method. Default comes from the config file (rdwb).'
)
@click.option(
    '-t', '--trend', default='none', show_default=True,
    help='Deterministic trend: none, constant, linear or poly:d.'
)
@click.option(
    '-B', '--B', 'replications', type=int, default=None,
    help='Number of bootstrap replications. Default comes from the config file.'
)
@click.option(
    '-l', '--l', 'bandwidth', default=None,
    help='Multiplier bandwidth: auto, mv or a positive integer.'
)
@click.option('-k', '--kernel', type=_KERNELS, default=None, help='Multiplier kernel.')
@click.option(
    '-a', '--alpha', type=float, default=None,
    help='Level of the reported verdicts. Default comes from the config file.'
)
@click.option('-s', '--seed', type=int, default=None, help='Random seed.')
@click.option(
    '-cf', '--config-file', type=click.Path(exists=True, dir_okay=False),
    default=None, help='Optional urtest config file to replace the package defaults.'
)
@click.option(
    '-of', '--output-file', help='Optional file to write the JSON report. By default '
    'it will be printed to stdout', type=click.File('w'), default='-'
)
def test(input_file, method, trend, replications, bandwidth, kernel, alpha, seed,
         config_file, output_file):
    """Test the unit root hypothesis on a single column CSV file."""
    try:
        cfg = load_config(config_file)
        config = _bootstrap_config(cfg, method, replications, bandwidth, kernel, seed)
        trend = TrendSpec.from_string(trend)
        alpha = _check_alpha(
            experiment_defaults(cfg)['alpha'] if alpha is None else alpha)
        series = ObservedSeries(read_series_csv(input_file), trend=trend)
        result = run_bootstrap(series, config)
        report = result.to_dict()
        report['trend'] = trend.to_string()
        report['alpha'] = alpha
        report['verdicts'] = result.verdicts(alpha)
        output_file.write(json.dumps(report, indent=2))
    except Exception as e:
        _logger.exception('Failed to run the unit root test.\n{}'.format(e))
        sys.exit(_exit_code(e))
    else:
        sys.exit(0)


@main.command('mv')
@click.argument(
    'input-file', type=click.Path(exists=True, dir_okay=False, resolve_path=True)
)
@click.option('-m', '--method', type=_METHODS, default=None, help='Bootstrap method.')
@click.option(
    '-t', '--trend', default='none', show_default=True,
    help='Deterministic trend: none, constant, linear or poly:d.'
)
@click.option(
    '-B', '--B', 'replications', type=int, default=None,
    help='Number of bootstrap replications for every candidate.'
)
@click.option('-k', '--kernel', type=_KERNELS, default=None, help='Multiplier kernel.')
@click.option('-s', '--seed', type=int, default=None, help='Random seed.')
@click.option(
    '-c', '--candidates', default=None,
    help='Candidate bandwidths as a range such as 1..13 or a list such as 1,2,4. '
    'Default is 1 to floor(12 (n / 100)^(1/4)) + 1.'
)
@click.option(
    '-st', '--statistic', type=click.Choice(['T', 't']), default=None,
    help='Statistic whose bootstrap distribution is compared across candidates.'
)
@click.option(
    '-cf', '--config-file', type=click.Path(exists=True, dir_okay=False),
    default=None, help='Optional urtest config file to replace the package defaults.'
)
@click.option(
    '-of', '--output-file', help='Optional file to write the JSON report. By default '
    'it will be printed to stdout', type=click.File('w'), default='-'
)
def mv(input_file, method, trend, replications, kernel, seed, candidates, statistic,
       config_file, output_file):
    """Select the multiplier bandwidth with the minimum volatility method."""
    try:
        cfg = load_config(config_file)
        config = _bootstrap_config(
            cfg, method, replications, 'auto', kernel, seed, mv_statistic=statistic)
        series = ObservedSeries(
            read_series_csv(input_file), trend=TrendSpec.from_string(trend))
        candidates = parse_candidates(candidates) or config.candidates or \
            default_candidates(series.length)
        selection = mv_select_bandwidth(series, config, candidates)
        report = selection.to_dict()
        report['method'] = config.method
        report['B'] = config.replications
        report['requested_candidates'] = list(candidates)
        output_file.write(json.dumps(report, indent=2))
    except Exception as e:
        _logger.exception('Failed to select the bandwidth.\n{}'.format(e))
        sys.exit(_exit_code(e))
    else:
        sys.exit(0)


def _experiment_options(func):
    """Options shared by the Monte Carlo commands."""
    options = [
        click.option(
            '-c', '--config', 'experiment', required=True,
            type=click.Path(exists=True, dir_okay=False, resolve_path=True),
            help='Experiment config JSON file.'
        ),
        click.option(
            '-o', '--out', 'output', required=True,
            type=click.Path(dir_okay=False, writable=True, resolve_path=True),
            help='Output CSV file. Metadata is written next to it as JSON.'
        ),
        click.option(
            '-th', '--threads', type=int, default=None, envvar='URTEST_THREADS',
            show_envvar=True,
            help='Number of worker processes. 0 uses every core. Default comes from '
            'the config file.'
        ),
        click.option(
            '-cf', '--config-file', type=click.Path(exists=True, dir_okay=False),
            default=None,
            help='Optional urtest config file to replace the package defaults.'
        )
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _run_experiment(runner, experiment, output, threads, config_file):
    cfg = load_config(config_file)
    spec = ExperimentSpec.from_file(experiment, experiment_defaults(cfg))
    workers = thread_count(threads, cfg)
    _logger.info('Running %r on %d workers.', spec, workers)
    table = runner(spec, threads=workers)
    write_rejection_table(table, output)


@main.command('simulate')
@_experiment_options
def simulate(experiment, output, threads, config_file):
    """Run a Monte Carlo size experiment and write the rejection table."""
    try:
        _run_experiment(run_size_experiment, experiment, output, threads, config_file)
    except Exception as e:
        _logger.exception('Failed to run the size experiment.\n{}'.format(e))
        sys.exit(_exit_code(e))
    else:
        sys.exit(0)


@main.command('power-curve')
@_experiment_options
def power_curve(experiment, output, threads, config_file):
    """Write empirical sizes at c = 0 and size-corrected powers at c < 0."""
    try:
        _run_experiment(size_corrected_power, experiment, output, threads, config_file)
    except Exception as e:
        _logger.exception('Failed to compute the power curve.\n{}'.format(e))
        sys.exit(_exit_code(e))
    else:
        sys.exit(0)
