// Copyright 2026 The uniest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "uniest/channel_model.hpp"
#include "uniest/errors.hpp"
#include "uniest/estimate.hpp"
#include "uniest/json_text.hpp"
#include "uniest/fisher.hpp"
#include "uniest/linalg.hpp"
#include "uniest/matsumoto.hpp"
#include "uniest/povm.hpp"
#include "uniest/povm_io.hpp"
#include "uniest/random.hpp"
#include "uniest/report_io.hpp"
#include "uniest/su_algebra.hpp"
#include "uniest/tolerances.hpp"
