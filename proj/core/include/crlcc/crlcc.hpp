#pragma once

#include "crlcc/bits.hpp"
#include "crlcc/channel.hpp"
#include "crlcc/ecc.hpp"
#include "crlcc/error.hpp"
#include "crlcc/graph.hpp"
#include "crlcc/hashing.hpp"
#include "crlcc/io.hpp"
#include "crlcc/oracles.hpp"
#include "crlcc/rational.hpp"
#include "crlcc/strong.hpp"
#include "crlcc/weak.hpp"
#include "crlcc/word.hpp"
