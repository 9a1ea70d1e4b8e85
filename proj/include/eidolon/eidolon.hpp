#pragma once

#include "eidolon/attacks.hpp"
#include "eidolon/bytes.hpp"
#include "eidolon/challenge.hpp"
#include "eidolon/commitment.hpp"
#include "eidolon/encoding.hpp"
#include "eidolon/error.hpp"
#include "eidolon/graph.hpp"
#include "eidolon/hash.hpp"
#include "eidolon/merkle.hpp"
#include "eidolon/protocol.hpp"
#include "eidolon/rng.hpp"
#include "eidolon/serialize.hpp"
#include "eidolon/sigscheme.hpp"
