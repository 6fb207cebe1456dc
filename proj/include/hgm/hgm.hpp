#pragma once

#include "hgm/corpus.hpp"
#include "hgm/count.hpp"
#include "hgm/error.hpp"
#include "hgm/ffield.hpp"
#include "hgm/gammatriple.hpp"
#include "hgm/hypersum.hpp"
#include "hgm/oracle.hpp"
#include "hgm/selftest.hpp"
#include "hgm/toric.hpp"
#include "hgm/zlinalg.hpp"
