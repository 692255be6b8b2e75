#pragma once

#include "dsmatch/applications.hpp"
#include "dsmatch/config.hpp"
#include "dsmatch/dataset.hpp"
#include "dsmatch/error.hpp"
#include "dsmatch/evidence.hpp"
#include "dsmatch/format.hpp"
#include "dsmatch/frame.hpp"
#include "dsmatch/io.hpp"
#include "dsmatch/lattice.hpp"
#include "dsmatch/preference.hpp"
#include "dsmatch/rational.hpp"
#include "dsmatch/ranking.hpp"
#include "dsmatch/selftest.hpp"
#include "dsmatch/skydemo.hpp"
