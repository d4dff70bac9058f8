// SPDX-License-Identifier: Apache-2.0

// Umbrella header for the library. The CLI front end lives in
// cloudtint/cli/app.hpp and is not included here.

#pragma once

#include "cloudtint/core/color_stats.hpp"
#include "cloudtint/core/geometry.hpp"
#include "cloudtint/core/point_cloud.hpp"
#include "cloudtint/core/types.hpp"
#include "cloudtint/error.hpp"
#include "cloudtint/ingest/box_file.hpp"
#include "cloudtint/ingest/palette.hpp"
#include "cloudtint/io/cloud_io.hpp"
#include "cloudtint/parallel.hpp"
#include "cloudtint/recolor/pipeline.hpp"
#include "cloudtint/split/splitter.hpp"
