#pragma once

#include "burnside/arith.hpp"
#include "burnside/coprime.hpp"
#include "burnside/cyclotomic.hpp"
#include "burnside/matrix.hpp"
#include "burnside/method.hpp"
#include "burnside/nullsets.hpp"
#include "burnside/parallel.hpp"
#include "burnside/permgroup.hpp"
#include "burnside/ramanujan.hpp"
#include "burnside/serialize.hpp"
