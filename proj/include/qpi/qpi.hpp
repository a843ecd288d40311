#pragma once

#include "qpi/error.hpp"
#include "qpi/geometry.hpp"
#include "qpi/integer.hpp"
#include "qpi/isotropy.hpp"
#include "qpi/qplane.hpp"
#include "qpi/scalar.hpp"
#include "qpi/serialize.hpp"
#include "qpi/text.hpp"
#include "qpi/torus.hpp"
