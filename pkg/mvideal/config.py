#
# Copyright (c) 2026, mvideal contributors.
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions are
# met:
#
#   Redistributions of source code must retain the above copyright notice,
#   this list of conditions and the following disclaimer.
#
#   Redistributions in binary form must reproduce the above copyright
#   notice, this list of conditions and the following disclaimer in the
#   documentation and/or other materials provided with the distribution.
#
#   Neither the name of the copyright holders nor the names of its
#   contributors may be used to endorse or promote products derived from
#   this software without specific prior written permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS
# "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT
# LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR
# A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT
# HOLDERS BE LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL,
# EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO,
# PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR
# PROFITS; OR BUSINESS INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF
# LIABILITY, WHETHER IN CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING
# NEGLIGENCE OR OTHERWISE) ARISING IN ANY WAY OUT OF THE USE OF THIS
# SOFTWARE, EVEN IF ADVISED OF THE POSSIBILITY OF SUCH DAMAGE.
#
"""Configuration file support

mvideal reads INI style configuration from, in order, /etc/mvideal.conf,
~/.mvideal.conf and the file named by the MVIDEAL_CONF environment
variable.  Later files override earlier ones and command line flags
override everything.  Only the ``[defaults]`` section is used::

    [defaults]
    seed = 0
    order = degrevlex
    method = elimination
    workers = 4
    retries = 10
    random_box = 10
"""

import os
import logging
import configparser

from mvideal.errors import MvIdealError


_LOGGER = logging.getLogger(__name__)

CONFIG_SEARCH_PATH = ['/etc/mvideal.conf', '~/.mvideal.conf']

DEFAULT_SEED = 0
DEFAULT_ORDER = 'degrevlex'
DEFAULT_METHOD = 'elimination'
DEFAULT_WORKERS = 4
DEFAULT_RETRIES = 10
DEFAULT_RANDOM_BOX = 10

DEFAULTS = {
    'seed': str(DEFAULT_SEED),
    'order': DEFAULT_ORDER,
    'method': DEFAULT_METHOD,
    'workers': str(DEFAULT_WORKERS),
    'retries': str(DEFAULT_RETRIES),
    'random_box': str(DEFAULT_RANDOM_BOX),
}


class Config(configparser.ConfigParser):
    """Configuration instance for mvideal

    Loads the configuration files in the search path and exposes typed
    accessors for the ``[defaults]`` section.

    Args:
        filename (str): An explicit file to load instead of the search path
    """

    def __init__(self, filename=None):
        super(Config, self).__init__()
        self.read_dict({'defaults': DEFAULTS})
        self.filenames = list()
        self.load(filename)

    def load(self, filename=None):
        if filename:
            candidates = [filename]
        else:
            candidates = list(CONFIG_SEARCH_PATH)
            if os.environ.get('MVIDEAL_CONF'):
                candidates.append(os.environ['MVIDEAL_CONF'])
        for candidate in candidates:
            path = os.path.expanduser(candidate)
            if not os.path.exists(path):
                continue
            try:
                self.filenames.extend(self.read(path))
            except configparser.Error as exc:
                raise MvIdealError('invalid configuration file %s: %s' %
                                   (path, exc))
            _LOGGER.debug('loaded configuration from %s', path)

    def _int(self, key):
        try:
            return self.getint('defaults', key)
        except ValueError:
            raise MvIdealError('configuration value %s must be an integer'
                               % key)

    @property
    def seed(self):
        return self._int('seed')

    @property
    def order(self):
        return self.get('defaults', 'order')

    @property
    def method(self):
        return self.get('defaults', 'method')

    @property
    def workers(self):
        return max(1, self._int('workers'))

    @property
    def retries(self):
        return max(1, self._int('retries'))

    @property
    def random_box(self):
        return max(1, self._int('random_box'))


config = Config()


def load_config(filename=None):
    """Replaces the module level configuration with a fresh instance"""
    global config
    config = Config(filename)
    return config
