import sys
import os
import unittest
from unittest.mock import patch

sys.path.append(os.path.join(os.path.dirname(__file__), '../lib'))

from testlib import get_fixture, load_fixture

from mvideal import config as mvconfig
from mvideal.errors import MvIdealError
from mvideal.session import VerificationSession


class TestConfig(unittest.TestCase):

    def setUp(self):
        self.addCleanup(mvconfig.load_config)

    def test_defaults(self):
        with patch.object(mvconfig, 'CONFIG_SEARCH_PATH', []), \
                patch.dict(os.environ, {}, clear=True):
            config = mvconfig.Config()
        self.assertEqual(config.filenames, [])
        self.assertEqual(config.seed, 0)
        self.assertEqual(config.order, 'degrevlex')
        self.assertEqual(config.method, 'elimination')
        self.assertEqual(config.workers, 4)
        self.assertEqual(config.retries, 10)
        self.assertEqual(config.random_box, 10)

    def test_load_file(self):
        config = mvconfig.Config(get_fixture('mvideal.conf'))
        self.assertEqual(len(config.filenames), 1)
        self.assertEqual(config.seed, 7)
        self.assertEqual(config.order, 'lex')
        self.assertEqual(config.method, 'focal_sum')
        self.assertEqual(config.workers, 2)
        self.assertEqual(config.retries, 3)
        self.assertEqual(config.random_box, 5)

    def test_environment_variable(self):
        with patch.object(mvconfig, 'CONFIG_SEARCH_PATH', []), \
                patch.dict(os.environ,
                           {'MVIDEAL_CONF': get_fixture('mvideal.conf')}):
            config = mvconfig.Config()
        self.assertEqual(config.seed, 7)

    def test_missing_file_is_ignored(self):
        config = mvconfig.Config(get_fixture('missing.conf'))
        self.assertEqual(config.filenames, [])
        self.assertEqual(config.retries, 10)

    def test_broken_value(self):
        config = mvconfig.Config(get_fixture('broken.conf'))
        self.assertEqual(config.seed, 0)
        with self.assertRaises(MvIdealError):
            config.workers

    def test_unparsable_file(self):
        with self.assertRaises(MvIdealError):
            mvconfig.Config(get_fixture('reducible.txt'))

    def test_session_reads_loaded_config(self):
        mvconfig.load_config(get_fixture('mvideal.conf'))
        session = VerificationSession(load_fixture('pair.json'))
        self.assertEqual(session.seed, 7)
        self.assertEqual(session.method, 'focal_sum')
        self.assertEqual(session.retries, 3)
        self.assertEqual(session.random_box, 5)


if __name__ == '__main__':
    unittest.main()
