#pragma once

// Umbrella header.

#include "fscan/bench.hpp"
#include "fscan/category.hpp"
#include "fscan/crossed_module.hpp"
#include "fscan/error.hpp"
#include "fscan/gl.hpp"
#include "fscan/grid.hpp"
#include "fscan/image.hpp"
#include "fscan/instances.hpp"
#include "fscan/io.hpp"
#include "fscan/linalg.hpp"
#include "fscan/matrix.hpp"
#include "fscan/scan.hpp"
#include "fscan/scan2d.hpp"
#include "fscan/semiring.hpp"
#include "fscan/tensor.hpp"
