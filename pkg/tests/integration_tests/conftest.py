import pytest

from specsetlab.cli.campaigns import CampaignRunner


@pytest.fixture
def runner(config):
    return CampaignRunner("warning", config)
