#pragma once

#include "pcy/analytics.hpp"
#include "pcy/catalog.hpp"
#include "pcy/cost_engine.hpp"
#include "pcy/errors.hpp"
#include "pcy/ingest.hpp"
#include "pcy/money.hpp"
#include "pcy/reference.hpp"
#include "pcy/reproduce.hpp"
