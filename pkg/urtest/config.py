# -*- coding: utf-8 -*-
"""Package defaults and experiment presets."""
import os
from configparser import ConfigParser as CP

from .exceptions import ConfigurationError

"""Desk scale Monte Carlo experiment."""
desk_scale = {
    'N': 500,
    'B': 399,
    'alpha': 0.05
}

"""Full scale Monte Carlo experiment."""
full_scale = {
    'N': 2000,
    'B': 1000,
    'alpha': 0.05
}

"""Local alternatives c = 0, -5, ..., -30 for power curves."""
local_alternatives = {
    'c_grid': [0.0, -5.0, -10.0, -15.0, -20.0, -25.0, -30.0]
}

"""Experiment scales by the name an experiment file uses."""
presets = {
    'desk': desk_scale,
    'full': full_scale
}


def load_config(cfg_file=None):
    """Load a urtest config file and return it as a dictionary of sections.

    Args:
        cfg_file: Optional path to a config file. By default ``urtest.cfg`` in the
            urtest package will be used.
    """
    cfg_file = cfg_file or os.path.join(os.path.dirname(__file__), 'urtest.cfg')
    if not os.path.isfile(cfg_file):
        raise ConfigurationError('Failed to find config file at: %s' % cfg_file)
    parser = CP()
    parser.read(cfg_file)
    config = {}
    for section in parser.sections():
        config[section] = {}
        for option in parser.options(section):
            config[section][option] = \
                parser.get(section, option).split('#')[0].strip()
    return config


def _option(config, section, option, cast=str):
    try:
        return cast(config[section][option])
    except KeyError:
        raise ConfigurationError('Config is missing [%s] %s.' % (section, option))
    except ValueError:
        raise ConfigurationError(
            'Invalid value for [%s] %s: %s' % (section, option, config[section][option])
        )


def bootstrap_defaults(config=None):
    """Bootstrap settings as a dictionary for ``BootstrapConfig.from_dict``."""
    config = load_config() if config is None else config
    defaults = {
        'method': _option(config, 'BOOTSTRAP', 'method'),
        'B': _option(config, 'BOOTSTRAP', 'replications', int),
        'l': _option(config, 'BOOTSTRAP', 'bandwidth'),
        'kernel': _option(config, 'BOOTSTRAP', 'kernel'),
        'seed': _option(config, 'BOOTSTRAP', 'seed', int),
        'mv_statistic': _option(config, 'MV', 'statistic')
    }
    candidates = config.get('MV', {}).get('candidates', 'auto')
    if candidates != 'auto':
        defaults['candidates'] = candidates
    return defaults


def experiment_defaults(config=None):
    """Monte Carlo defaults with the keys N, B, alpha and seed."""
    config = load_config() if config is None else config
    return {
        'N': _option(config, 'EXPERIMENT', 'replications', int),
        'B': _option(config, 'EXPERIMENT', 'bootstrap_replications', int),
        'alpha': _option(config, 'EXPERIMENT', 'alpha', float),
        'seed': _option(config, 'EXPERIMENT', 'seed', int)
    }


def thread_count(threads=None, config=None):
    """Number of worker processes. 0 or None uses the configured value or every core.
    """
    if threads is None:
        config = load_config() if config is None else config
        threads = _option(config, 'RUNTIME', 'threads', int)
    threads = int(threads)
    if threads < 0:
        raise ConfigurationError('threads must be non-negative. Got %d.' % threads)
    return threads or os.cpu_count() or 1
