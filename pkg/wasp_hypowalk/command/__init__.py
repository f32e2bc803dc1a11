# -*- coding: utf-8 -*-
# wasp_hypowalk/command/__init__.py
#
# Copyright (C) 2026 the wasp-hypowalk authors and contributors
# <see AUTHORS file>
#
# This file is part of wasp-hypowalk.
#
# Wasp-hypowalk is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Wasp-hypowalk is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with wasp-hypowalk.  If not, see <http://www.gnu.org/licenses/>.
