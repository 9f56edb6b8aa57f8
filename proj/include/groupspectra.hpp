#pragma once

#include "groupspectra/errors.hpp"
#include "groupspectra/group.hpp"
#include "groupspectra/repr.hpp"
#include "groupspectra/spectra.hpp"
#include "groupspectra/rng.hpp"
#include "groupspectra/noise.hpp"
#include "groupspectra/recovery.hpp"
#include "groupspectra/limits.hpp"
#include "groupspectra/serialize.hpp"
#include "groupspectra/svg.hpp"
#include "groupspectra/cli.hpp"
