#pragma once

// Umbrella header for the WCG content characterization library.

#include "wcg/cid.hpp"
#include "wcg/color.hpp"
#include "wcg/corpus.hpp"
#include "wcg/criteria.hpp"
#include "wcg/gamut_io.hpp"
#include "wcg/gamut_map.hpp"
#include "wcg/image.hpp"
#include "wcg/image_io.hpp"
#include "wcg/lab.hpp"
#include "wcg/numeric.hpp"
#include "wcg/parallel.hpp"
#include "wcg/perceptual.hpp"
#include "wcg/rng.hpp"
#include "wcg/selection.hpp"
#include "wcg/ssim.hpp"
#include "wcg/stats.hpp"
#include "wcg/transfer.hpp"
#include "wcg/version.hpp"
