#pragma once

#include "gkz/error.hpp"
#include "gkz/exactlat.hpp"
#include "gkz/polyring.hpp"
#include "gkz/cone.hpp"
#include "gkz/stdpairs.hpp"
#include "gkz/resonance.hpp"
#include "gkz/border.hpp"
#include "gkz/ekpresent.hpp"
