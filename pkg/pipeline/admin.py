from django.contrib import admin

from .models import AnalysisRun


@admin.register(AnalysisRun)
class AnalysisRunAdmin(admin.ModelAdmin):
    list_display = ['started_at', 'kind', 'language', 'status', 'components', 'fit', 'bot_threshold', 'output_dir']
    list_filter = ['kind', 'status', 'language']
    search_fields = ['output_dir', 'input_path', 'error_message']
    readonly_fields = ['started_at', 'finished_at', 'stage_counts']
