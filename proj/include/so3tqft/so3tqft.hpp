#pragma once

#include "cyc_matrix.hpp"
#include "cyclo.hpp"
#include "finite_image.hpp"
#include "fusion_dims.hpp"
#include "mfld3.hpp"
#include "modular_data.hpp"
#include "numtheory.hpp"
#include "sl2_char.hpp"
#include "weil.hpp"
