// Copyright (C) 2026 the rankdrift authors
// SPDX-License-Identifier: MIT
#pragma once

#include "rankdrift/errors.hpp"
#include "rankdrift/f1.hpp"
#include "rankdrift/ingest.hpp"
#include "rankdrift/kendall.hpp"
#include "rankdrift/math.hpp"
#include "rankdrift/ranking.hpp"
#include "rankdrift/report.hpp"
#include "rankdrift/stats.hpp"
