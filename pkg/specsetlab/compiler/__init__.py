from specsetlab.compiler.compiler import Compiler
