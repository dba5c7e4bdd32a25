from .parameters.ModelParams import ModelParams
