#include "doctest.h"
#include "ptt/frontend.hpp"
