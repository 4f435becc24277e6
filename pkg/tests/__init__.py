# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT
