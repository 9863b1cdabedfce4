# Copyright 2018 Open Source Robotics Foundation, Inc.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import subprocess
import sys

import pytest


@pytest.mark.flake8
@pytest.mark.linter
def test_flake8():
    # flake8 has no stable public API; run it as a module over src and test
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    ret_code = subprocess.call(
        [sys.executable, '-m', 'flake8', 'src', 'test'],
        cwd=root,
    )
    assert 0 == ret_code, 'flake8 found violations'
