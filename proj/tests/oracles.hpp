#pragma once

#include "affschur/reference.hpp"

namespace oracle = affschur::reference;
